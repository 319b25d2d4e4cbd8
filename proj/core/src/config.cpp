#include "fracpf/config.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fracpf/init.hpp"
#include "fracpf/io.hpp"

namespace fracpf {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError(key, "not a number: '" + v + "'");
    }
}

long long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        long long i = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        throw ConfigError(key, "not an integer: '" + v + "'");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        unsigned long long i = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        throw ConfigError(key, "not an unsigned integer: '" + v + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError(key, "not a boolean: '" + v + "'");
}

const char* family_name(Family f) {
    switch (f) {
    case Family::AC: return "ac";
    case Family::CH: return "ch";
    case Family::MBE_slope: return "mbe-slope";
    default: return "mbe-noslope";
    }
}

const char* initial_name(InitialKind k) {
    switch (k) {
    case InitialKind::flower: return "flower";
    case InitialKind::uniform_random: return "random";
    default: return "file";
    }
}

} // namespace

void RunConfig::validate() const {
    if (!(model.epsilon > 0.0)) throw ConfigError("epsilon", "must be positive");
    if (!(model.gamma > 0.0)) throw ConfigError("gamma", "must be positive");
    if (model.stabilization_S < 0.0) throw ConfigError("S", "must be nonnegative");
    if (nx < 4 || nx % 2 != 0) throw ConfigError("nx", "must be even and >= 4");
    if (ny < 4 || ny % 2 != 0) throw ConfigError("ny", "must be even and >= 4");
    if (!(lx > 0.0)) throw ConfigError("lx", "must be positive");
    if (!(ly > 0.0)) throw ConfigError("ly", "must be positive");
    if (!(alpha > 0.0) || alpha > 1.0) throw ConfigError("alpha", "must be in (0, 1]");
    if (!(tau > 0.0)) throw ConfigError("tau", "must be positive");
    if (n_steps < 0) throw ConfigError("n_steps", "must be nonnegative");
    if (initial == InitialKind::uniform_random && !(amplitude > 0.0))
        throw ConfigError("amplitude", "must be positive");
    if (initial == InitialKind::file && initial_file.empty())
        throw ConfigError("initial", "file path missing (use initial = file:<path>)");
    if (energy_stride < 1) throw ConfigError("energy_stride", "must be >= 1");
    if (snapshot_stride < 0) throw ConfigError("snapshot_stride", "must be >= 0");
    if (!(nonlinear_tol > 0.0) || nonlinear_tol > 1e-4)
        throw ConfigError("nonlinear_tol", "must be in (0, 1e-4]");
    if (nonlinear_max_iter < 1) throw ConfigError("nonlinear_max_iter", "must be >= 1");
}

void apply_config_line(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "family") {
        if (value == "ac") cfg.model.family = Family::AC;
        else if (value == "ch") cfg.model.family = Family::CH;
        else if (value == "mbe-slope") cfg.model.family = Family::MBE_slope;
        else if (value == "mbe-noslope") cfg.model.family = Family::MBE_noslope;
        else throw ConfigError("family", "expected ac|ch|mbe-slope|mbe-noslope, got '" + value + "'");
    } else if (key == "splitting") {
        if (value == "stabilized") cfg.model.splitting = Splitting::stabilized;
        else if (value == "convex_split") cfg.model.splitting = Splitting::convex_split;
        else throw ConfigError("splitting", "expected stabilized|convex_split, got '" + value + "'");
    } else if (key == "potential") {
        if (value == "quartic") cfg.model.potential = Potential::quartic;
        else if (value == "truncated") cfg.model.potential = Potential::truncated_quartic;
        else throw ConfigError("potential", "expected quartic|truncated, got '" + value + "'");
    } else if (key == "epsilon") cfg.model.epsilon = parse_double(key, value);
    else if (key == "gamma") cfg.model.gamma = parse_double(key, value);
    else if (key == "S") cfg.model.stabilization_S = parse_double(key, value);
    else if (key == "dealias") cfg.model.dealias = parse_bool(key, value);
    else if (key == "nx") cfg.nx = static_cast<int>(parse_int(key, value));
    else if (key == "ny") cfg.ny = static_cast<int>(parse_int(key, value));
    else if (key == "lx") cfg.lx = parse_double(key, value);
    else if (key == "ly") cfg.ly = parse_double(key, value);
    else if (key == "alpha") cfg.alpha = parse_double(key, value);
    else if (key == "tau") cfg.tau = parse_double(key, value);
    else if (key == "n_steps") cfg.n_steps = static_cast<int>(parse_int(key, value));
    else if (key == "initial") {
        if (value == "flower") cfg.initial = InitialKind::flower;
        else if (value == "random") cfg.initial = InitialKind::uniform_random;
        else if (value.rfind("file:", 0) == 0) {
            cfg.initial = InitialKind::file;
            cfg.initial_file = value.substr(5);
        } else throw ConfigError("initial", "expected flower|random|file:<path>, got '" + value + "'");
    } else if (key == "seed") cfg.seed = parse_u64(key, value);
    else if (key == "amplitude") cfg.amplitude = parse_double(key, value);
    else if (key == "out_dir") cfg.out_dir = value;
    else if (key == "energy_stride") cfg.energy_stride = static_cast<int>(parse_int(key, value));
    else if (key == "snapshot_stride") cfg.snapshot_stride = static_cast<int>(parse_int(key, value));
    else if (key == "memory_cap_bytes") cfg.memory_cap_bytes = parse_u64(key, value);
    else if (key == "corner_origin") cfg.corner_origin = parse_bool(key, value);
    else if (key == "nonlinear_tol") cfg.nonlinear_tol = parse_double(key, value);
    else if (key == "nonlinear_max_iter") cfg.nonlinear_max_iter = static_cast<int>(parse_int(key, value));
    else throw ConfigError(key, "unknown configuration key");
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("config", "cannot open config file: " + path);
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config", "line " + std::to_string(lineno) + ": expected key = value");
        apply_config_line(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

RunConfig preset_config(const std::string& name) {
    RunConfig cfg;
    if (name == "ac-flower") {
        cfg.model = {Family::AC, 0.05, 0.05, 0.1, Potential::quartic, Splitting::stabilized};
        cfg.nx = cfg.ny = 128;
        cfg.lx = cfg.ly = 2.0;
        cfg.tau = 0.1;
        cfg.n_steps = 300;
        cfg.initial = InitialKind::flower;
    } else if (name == "ch-random") {
        cfg.model = {Family::CH, 0.05, 0.05 * 0.05, 0.01, Potential::quartic, Splitting::stabilized};
        cfg.nx = cfg.ny = 256;
        cfg.lx = cfg.ly = 2.0;
        cfg.tau = 0.001;
        cfg.n_steps = 2000;
        cfg.initial = InitialKind::uniform_random;
        cfg.seed = 42;
        cfg.amplitude = 1.0;
    } else if (name == "mbe-random") {
        cfg.model = {Family::MBE_slope, 0.1, 0.1, 0.1, Potential::quartic, Splitting::stabilized};
        cfg.nx = cfg.ny = 256;
        cfg.lx = cfg.ly = 2.0 * std::numbers::pi;
        cfg.tau = 0.001;
        cfg.n_steps = 2000;
        cfg.initial = InitialKind::uniform_random;
        cfg.seed = 42;
        cfg.amplitude = 0.001;
    } else {
        throw ConfigError("preset", "unknown preset '" + name + "' (ac-flower|ch-random|mbe-random)");
    }
    return cfg;
}

void execute(const RunConfig& cfg) {
    cfg.validate();
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);

    Grid grid(cfg.nx, cfg.ny, cfg.lx, cfg.ly);
    Field initial;
    switch (cfg.initial) {
    case InitialKind::flower:
        initial = initial_flower(grid, cfg.model.epsilon, cfg.corner_origin);
        break;
    case InitialKind::uniform_random:
        initial = initial_random(grid, cfg.seed, cfg.amplitude);
        break;
    case InitialKind::file: {
        Snapshot s = read_snapshot(cfg.initial_file);
        if (s.nx != cfg.nx || s.ny != cfg.ny)
            throw ConfigError("initial", "snapshot dimensions do not match grid");
        initial = Field(grid);
        initial.v = s.values;
        break;
    }
    }

    SolverSettings settings;
    settings.tau = cfg.tau;
    settings.n_steps = cfg.n_steps;
    settings.nonlinear_tol = cfg.nonlinear_tol;
    settings.nonlinear_max_iter = cfg.nonlinear_max_iter;
    settings.memory_cap_bytes = cfg.memory_cap_bytes;

    const double s_star = cfg.model.theorem_stabilization();
    const bool understabilized =
        cfg.model.splitting == Splitting::stabilized && cfg.model.stabilization_S < s_star;

    {
        std::ofstream man(cfg.out_dir + "/manifest.txt");
        man << "family = " << family_name(cfg.model.family) << "\n"
            << "splitting = "
            << (cfg.model.splitting == Splitting::stabilized ? "stabilized" : "convex_split") << "\n"
            << "potential = "
            << (cfg.model.potential == Potential::quartic ? "quartic" : "truncated") << "\n";
        char buf[512];
        std::snprintf(buf, sizeof(buf),
                      "epsilon = %.17g\ngamma = %.17g\nS = %.17g\nnx = %d\nny = %d\n"
                      "lx = %.17g\nly = %.17g\nalpha = %.17g\ntau = %.17g\nn_steps = %d\n",
                      cfg.model.epsilon, cfg.model.gamma, cfg.model.stabilization_S, cfg.nx, cfg.ny,
                      cfg.lx, cfg.ly, cfg.alpha, cfg.tau, cfg.n_steps);
        man << buf;
        man << "initial = " << initial_name(cfg.initial) << "\n";
        if (cfg.initial == InitialKind::uniform_random)
            man << "seed = " << cfg.seed << "\namplitude = " << cfg.amplitude << "\n";
        if (cfg.initial == InitialKind::file) man << "initial_file = " << cfg.initial_file << "\n";
        man << "energy_stride = " << cfg.energy_stride << "\n"
            << "snapshot_stride = " << cfg.snapshot_stride << "\n"
            << "memory_cap_bytes = " << cfg.memory_cap_bytes << "\n"
            << "corner_origin = " << (cfg.corner_origin ? "true" : "false") << "\n"
            << "dealias = " << (cfg.model.dealias ? "true" : "false") << "\n";
        if (std::isfinite(s_star))
            man << "S_star = " << s_star << "\n";
        else
            man << "S_star = inf  # unbounded f' for this potential/family\n";
        if (understabilized)
            man << "warning = S below theorem value S_star; energy stability not certified\n";
    }

    L1Kernel kernel(cfg.alpha, cfg.tau, std::max(1, cfg.n_steps));
    RunObservers obs;
    obs.energy_stride = cfg.energy_stride;
    obs.snapshot_stride = cfg.snapshot_stride;
    if (cfg.snapshot_stride > 0) {
        obs.on_snapshot = [&](const RunState& s) {
            write_snapshot(cfg.out_dir + "/snap_" + std::to_string(s.step) + ".fpf", s.phi, s.time,
                           cfg.alpha);
        };
    }

    auto [final_state, report] = run(cfg.model, kernel, settings, std::move(initial), obs);
    (void)final_state;
    write_energy_csv(cfg.out_dir + "/energy.csv", report);
}

} // namespace fracpf
