#include "fracpf/diagnostics.hpp"

#include <cmath>

#include "fracpf/fracops.hpp"

namespace fracpf {

PowerLawFit fit_power_law(const std::vector<double>& times, const std::vector<double>& energies,
                          double t_begin, double t_end) {
    if (times.size() != energies.size()) throw DomainError("times/energies length mismatch");
    if (!(t_begin < t_end)) throw DomainError("fit window must satisfy t_begin < t_end");

    std::vector<double> lt, le;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t_begin || times[i] > t_end) continue;
        if (!(times[i] > 0.0)) continue;
        if (!(energies[i] > 0.0))
            throw NonpositiveEnergy("power-law fit requires strictly positive energies in window");
        lt.push_back(std::log(times[i]));
        le.push_back(std::log(energies[i]));
    }
    const int n = static_cast<int>(lt.size());
    if (n < 5) throw InsufficientData("power-law fit needs at least 5 samples in the window");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sx += lt[i];
        sy += le[i];
        sxx += lt[i] * lt[i];
        sxy += lt[i] * le[i];
    }
    double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-300) throw InsufficientData("degenerate fit window");
    double slope = (n * sxy - sx * sy) / denom;
    double intercept = (sy - slope * sx) / n;

    double ss = 0;
    for (int i = 0; i < n; ++i) {
        double r = le[i] - (slope * lt[i] + intercept);
        ss += r * r;
    }
    PowerLawFit fit;
    fit.exponent = slope;
    fit.prefactor = std::exp(intercept);
    fit.t_begin = t_begin;
    fit.t_end = t_end;
    fit.residual = std::sqrt(ss / n);
    fit.n_points = n;
    return fit;
}

PowerLawFit fit_power_law(const SeriesReport& series, double t_begin, double t_end) {
    std::vector<double> e(series.energy.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = series.energy[i].total;
    return fit_power_law(series.times, e, t_begin, t_end);
}

double l1_manufactured_error(double alpha, double tau) {
    if (!(alpha > 0.0) || alpha > 1.0) throw DomainError("alpha must be in (0,1]");
    if (!(tau > 0.0)) throw DomainError("tau must be positive");
    const double T = 1.0;
    const int n = static_cast<int>(std::llround(T / tau));
    std::vector<double> b = b_coeffs(alpha, tau, n + 1);
    const double gc = 2.0 / std::tgamma(3.0 - alpha);

    std::vector<double> du(n, 0.0); // du[k] = u^{k+1} - u^k
    double u = 0.0;
    for (int k = 0; k < n; ++k) {
        double t_next = (k + 1) * tau;
        double g = gc * std::pow(t_next, 2.0 - alpha);
        double hist = 0.0;
        for (int j = 1; j <= k; ++j) hist += b[j] * du[k - j];
        du[k] = (tau * g - hist) / b[0];
        u += du[k];
    }
    return std::abs(u - T * T);
}

double l1_convergence_order(double alpha, const std::vector<double>& taus) {
    if (taus.size() < 3) throw DomainError("need at least 3 tau values");
    for (std::size_t i = 1; i < taus.size(); ++i)
        if (!(taus[i] < taus[i - 1])) throw DomainError("taus must be strictly decreasing");
    std::vector<double> errs;
    for (double tau : taus) errs.push_back(l1_manufactured_error(alpha, tau));
    double acc = 0.0;
    int cnt = 0;
    for (std::size_t i = 1; i < errs.size(); ++i) {
        acc += std::log(errs[i - 1] / errs[i]) / std::log(taus[i - 1] / taus[i]);
        ++cnt;
    }
    return acc / cnt;
}

double max_principle_overshoot(const SeriesReport& series) {
    double peak = 0.0;
    for (double m : series.max_abs) peak = std::max(peak, m);
    return std::max(0.0, peak - 1.0);
}

} // namespace fracpf
