#include "fracpf/fracops.hpp"

#include <Eigen/Dense>

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fracpf {

namespace {

void check_alpha_tau(double alpha, double tau, bool allow_one) {
    double hi = allow_one ? 1.0 : std::nextafter(1.0, 0.0);
    if (!(alpha > 0.0) || alpha > hi)
        throw DomainError(allow_one ? "alpha must be in (0,1]" : "alpha must be in (0,1)");
    if (!(tau > 0.0)) throw DomainError("tau must be positive");
}

} // namespace

std::vector<double> b_coeffs(double alpha, double tau, int n) {
    check_alpha_tau(alpha, tau, /*allow_one=*/true);
    if (n < 1) throw DomainError("n must be >= 1");
    std::vector<double> b(n);
    if (alpha == 1.0) {
        b[0] = 1.0;
        return b;
    }
    const double c = std::pow(tau, 1.0 - alpha) / std::tgamma(2.0 - alpha);
    for (int j = 0; j < n; ++j)
        b[j] = c * (std::pow(j + 1.0, 1.0 - alpha) - std::pow(static_cast<double>(j), 1.0 - alpha));
    return b;
}

std::vector<double> btilde_coeffs(double alpha, double tau, int n) {
    check_alpha_tau(alpha, tau, /*allow_one=*/false);
    if (n < 1) throw DomainError("n must be >= 1");
    std::vector<double> bt(n);
    const double c = std::pow(tau, 1.0 - alpha) / std::tgamma(3.0 - alpha);
    bt[0] = 2.0 * c;
    for (int k = 1; k < n; ++k)
        bt[k] = c * (std::pow(k + 1.0, 2.0 - alpha) - 2.0 * std::pow(static_cast<double>(k), 2.0 - alpha) +
                     std::pow(k - 1.0, 2.0 - alpha));
    return bt;
}

double s_lower_bound(double alpha, double tau, int n) {
    check_alpha_tau(alpha, tau, /*allow_one=*/false);
    if (n < 1) throw DomainError("n must be >= 1");
    return std::pow((n + 1.0) / 2.0, -alpha) * std::pow(tau, 1.0 - alpha) / std::tgamma(1.0 - alpha);
}

double a_alpha_piecewise_constant(const std::vector<double>& u, double alpha, double tau) {
    check_alpha_tau(alpha, tau, /*allow_one=*/false);
    const int n = static_cast<int>(u.size());
    if (n == 0) return 0.0;
    std::vector<double> bt = btilde_coeffs(alpha, tau, n);
    double s = 0.0;
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) s += bt[std::abs(k - j)] * u[j] * u[k];
    return 0.5 * tau * s;
}

KernelCertificate kernel_form_certificate(double alpha, double tau, int n) {
    check_alpha_tau(alpha, tau, /*allow_one=*/false);
    if (n < 1 || n > 2048) throw DomainError("n must be in [1, 2048]");
    std::vector<double> b = b_coeffs(alpha, tau, n);
    Eigen::MatrixXd M(n, n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) M(k, j) = b[std::abs(k - j)] + (k == j ? b[0] : 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    double min_eig = es.eigenvalues().minCoeff();
    double sn = s_lower_bound(alpha, tau, n);
    return {min_eig, sn, min_eig >= sn - 1e-12};
}

L1Kernel::L1Kernel(double alpha_, double tau_, int n_max_)
    : alpha(alpha_), tau(tau_), n_max(n_max_), s_lower(0.0) {
    check_alpha_tau(alpha, tau, /*allow_one=*/true);
    if (n_max < 1) throw DomainError("n_max must be >= 1");
    b = b_coeffs(alpha, tau, n_max);
    if (alpha < 1.0) {
        btilde = btilde_coeffs(alpha, tau, n_max);
        s_lower = s_lower_bound(alpha, tau, n_max);
    }
}

Field history_convolution(const History& h, const L1Kernel& kernel, int k) {
    if (h.step_count() != k) throw HistoryLengthMismatch("history length does not match step index");
    const Grid& g = h.grid;
    Field out(g);
    if (k == 0) return out;
    if (k > kernel.n_max - 1 && kernel.alpha < 1.0)
        throw HistoryLengthMismatch("kernel n_max too small for step index");
    if (kernel.alpha == 1.0) return out; // b_j = 0 for j >= 1

    const std::size_t npts = g.size();
    // each thread owns a fixed point range and sweeps the history in
    // increasing j, so per-point accumulation order (and hence the bit
    // pattern) is independent of the thread count; streaming one increment
    // field at a time keeps the walk cache- and TLB-friendly
#ifdef _OPENMP
#pragma omp parallel
#endif
    {
        std::size_t nth = 1, tid = 0;
#ifdef _OPENMP
        nth = static_cast<std::size_t>(omp_get_num_threads());
        tid = static_cast<std::size_t>(omp_get_thread_num());
#endif
        const std::size_t chunk = (npts + nth - 1) / nth;
        const std::size_t lo = std::min(npts, tid * chunk);
        const std::size_t hi = std::min(npts, lo + chunk);
        for (int j = 1; j <= k; ++j) {
            const double bj = kernel.b[j];
            const double* src = h.increments[k - j].v.data();
            double* dst = out.v.data();
            for (std::size_t i = lo; i < hi; ++i) dst[i] += bj * src[i];
        }
    }
    return out;
}

} // namespace fracpf
