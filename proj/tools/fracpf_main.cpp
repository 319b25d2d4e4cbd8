#include <CLI11.hpp>

#include <cstdio>
#include <optional>
#include <vector>

#include "fracpf/config.hpp"
#include "fracpf/diagnostics.hpp"
#include "fracpf/fracops.hpp"
#include "fracpf/io.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitSolverError = 3;
constexpr int kExitBudgetExceeded = 4;

int cmd_run(const std::string& config_path, const std::string& preset,
            const std::vector<std::pair<std::string, std::string>>& overrides) {
    fracpf::RunConfig cfg;
    if (!preset.empty() && !config_path.empty()) {
        std::fprintf(stderr, "config error: give either --config or --preset, not both\n");
        return kExitConfigError;
    }
    try {
        if (!preset.empty()) cfg = fracpf::preset_config(preset);
        else if (!config_path.empty()) cfg = fracpf::parse_config_file(config_path);
        else {
            std::fprintf(stderr, "config error: --config or --preset required\n");
            return kExitConfigError;
        }
        for (const auto& [k, v] : overrides) fracpf::apply_config_line(cfg, k, v);
        fracpf::execute(cfg);
    } catch (const fracpf::ConfigError& e) {
        std::fprintf(stderr, "config error at '%s': %s\n", e.field.c_str(), e.what());
        return kExitConfigError;
    } catch (const fracpf::BudgetExceeded& e) {
        std::fprintf(stderr, "budget exceeded: %s\n", e.what());
        return kExitBudgetExceeded;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return kExitSolverError;
    }
    return 0;
}

int cmd_check_kernel(double tau, const std::vector<double>& alphas, const std::vector<int>& ns) {
    bool all_ok = true;
    std::printf("%8s %6s %6s %16s %16s %10s\n", "alpha", "tau", "n", "min_eig", "s_n", "certified");
    for (double a : alphas) {
        for (int n : ns) {
            try {
                auto cert = fracpf::kernel_form_certificate(a, tau, n);
                std::printf("%8.3f %6g %6d %16.9e %16.9e %10s\n", a, tau, n, cert.min_eigenvalue,
                            cert.s_n, cert.certified ? "yes" : "NO");
                all_ok = all_ok && cert.certified;
            } catch (const std::exception& e) {
                std::fprintf(stderr, "error at alpha=%g n=%d: %s\n", a, n, e.what());
                return kExitConfigError;
            }
        }
    }
    return all_ok ? 0 : 1;
}

int cmd_convergence(double alpha, const std::vector<double>& taus) {
    try {
        double order = fracpf::l1_convergence_order(alpha, taus);
        std::printf("alpha = %g  taus =", alpha);
        for (double t : taus) std::printf(" %g", t);
        std::printf("\nobserved order = %.6f (theory %.6f)\n", order, 2.0 - alpha);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfigError;
    }
    return 0;
}

int cmd_coarsen_fit(const std::string& csv_path, double t_begin, double t_end) {
    try {
        fracpf::EnergyCsv csv = fracpf::read_energy_csv(csv_path);
        auto fit = fracpf::fit_power_law(csv.times, csv.energy, t_begin, t_end);
        std::printf("window [%g, %g], %d points\n", fit.t_begin, fit.t_end, fit.n_points);
        std::printf("exponent = %.10f\nprefactor = %.10g\nresidual_rms = %.3e\n", fit.exponent,
                    fit.prefactor, fit.residual);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfigError;
    }
    return 0;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-fractional phase-field simulator (Allen-Cahn, Cahn-Hilliard, MBE)"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Advance a model and write energy.csv / snapshots");
    std::string config_path, preset, out_dir;
    std::optional<double> alpha_opt, tau_opt;
    std::optional<int> steps_opt;
    std::optional<std::uint64_t> seed_opt;
    bool corner_origin = false, dealias = false;
    run->add_option("--config", config_path, "flat key = value config file");
    run->add_option("--preset", preset, "ac-flower | ch-random | mbe-random");
    run->add_option("--alpha", alpha_opt, "fractional order in (0,1]");
    run->add_option("--tau", tau_opt, "time step");
    run->add_option("--steps", steps_opt, "number of steps");
    run->add_option("--seed", seed_opt, "RNG seed for random initial data");
    run->add_option("--out", out_dir, "output directory");
    run->add_flag("--corner-origin", corner_origin, "evaluate the flower profile from the corner");
    run->add_flag("--dealias", dealias, "3/2-rule dealiasing of nonlinear terms");

    // check-kernel
    auto* ck = app.add_subcommand("check-kernel", "Kernel positivity certificates over an alpha grid");
    double ck_tau = 0.1;
    std::vector<double> ck_alphas = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::vector<int> ck_ns = {4, 16, 64};
    ck->add_option("--tau", ck_tau, "time step");
    ck->add_option("--alpha", ck_alphas, "alpha values");
    ck->add_option("--n", ck_ns, "matrix sizes");

    // convergence
    auto* cv = app.add_subcommand("convergence", "Observed L1 order on a manufactured solution");
    double cv_alpha = 0.5;
    std::vector<double> cv_taus = {1.0 / 32, 1.0 / 64, 1.0 / 128, 1.0 / 256};
    cv->add_option("--alpha", cv_alpha, "fractional order");
    cv->add_option("--tau", cv_taus, "decreasing time steps");

    // coarsen-fit
    auto* cf = app.add_subcommand("coarsen-fit", "Power-law fit of an energy.csv window");
    std::string cf_csv;
    double cf_t0 = 0.0, cf_t1 = 0.0;
    cf->add_option("--csv", cf_csv, "energy.csv path")->required();
    cf->add_option("--t-begin", cf_t0, "window start")->required();
    cf->add_option("--t-end", cf_t1, "window end")->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        std::vector<std::pair<std::string, std::string>> overrides;
        if (alpha_opt) overrides.emplace_back("alpha", fmt_double(*alpha_opt));
        if (tau_opt) overrides.emplace_back("tau", fmt_double(*tau_opt));
        if (steps_opt) overrides.emplace_back("n_steps", std::to_string(*steps_opt));
        if (seed_opt) overrides.emplace_back("seed", std::to_string(*seed_opt));
        if (!out_dir.empty()) overrides.emplace_back("out_dir", out_dir);
        if (corner_origin) overrides.emplace_back("corner_origin", "true");
        if (dealias) overrides.emplace_back("dealias", "true");
        return cmd_run(config_path, preset, overrides);
    }
    if (ck->parsed()) return cmd_check_kernel(ck_tau, ck_alphas, ck_ns);
    if (cv->parsed()) return cmd_convergence(cv_alpha, cv_taus);
    if (cf->parsed()) return cmd_coarsen_fit(cf_csv, cf_t0, cf_t1);
    return 0;
}
