#pragma once

#include <vector>

#include "fracpf/stepper.hpp"

namespace fracpf {

struct PowerLawFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double t_begin = 0.0;
    double t_end = 0.0;
    double residual = 0.0; // RMS in log-log coordinates
    int n_points = 0;
};

// Ordinary least squares of log E against log t over [t_begin, t_end].
// Needs at least 5 in-window samples with strictly positive energies.
PowerLawFit fit_power_law(const std::vector<double>& times, const std::vector<double>& energies,
                          double t_begin, double t_end);
PowerLawFit fit_power_law(const SeriesReport& series, double t_begin, double t_end);

// Observed convergence order of the scalar L1 scheme on the manufactured
// problem D^a u = 2 t^{2-a}/Gamma(3-a) with exact solution u = t^2 on [0,1].
// Returns the mean log2 error-ratio slope over consecutive tau pairs.
double l1_convergence_order(double alpha, const std::vector<double>& taus);

// Final-time error of that manufactured run at one tau (exposed for tests).
double l1_manufactured_error(double alpha, double tau);

// max(0, max_n(max_abs_n) - 1): how far the trajectory exceeds |phi| <= 1.
double max_principle_overshoot(const SeriesReport& series);

} // namespace fracpf
