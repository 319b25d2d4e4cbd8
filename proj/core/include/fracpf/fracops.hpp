#pragma once

#include <vector>

#include "fracpf/grid.hpp"

namespace fracpf {

// L1 quadrature weights for the Caputo derivative of order alpha at uniform
// step tau:  b_j = tau^{1-a}/Gamma(2-a) * ((j+1)^{1-a} - j^{1-a}).
// alpha = 1 degenerates to backward Euler (b = 1, 0, 0, ...).
std::vector<double> b_coeffs(double alpha, double tau, int n);

// Exact cell-pair quadrature weights of the |t-s|^{-alpha} kernel:
// btilde_0 = 2 tau^{1-a}/Gamma(3-a),
// btilde_k = tau^{1-a}/Gamma(3-a) * ((k+1)^{2-a} - 2k^{2-a} + (k-1)^{2-a}).
// Requires alpha in (0,1).
std::vector<double> btilde_coeffs(double alpha, double tau, int n);

// Positive lower bound s_n = ((n+1)/2)^{-a} tau^{1-a}/Gamma(1-a) on the
// smallest eigenvalue of the L1 coefficient quadratic form.
double s_lower_bound(double alpha, double tau, int n);

// Exact kernel bilinear form A_a(u,u) for the piecewise-constant extension
// of u onto [0, n*tau]: (tau/2) * sum_{k,j} btilde_{|k-j|} u_j u_k.  Always
// nonnegative.
double a_alpha_piecewise_constant(const std::vector<double>& u, double alpha, double tau);

struct KernelCertificate {
    double min_eigenvalue;
    double s_n;
    bool certified;
};

// Dense eigenvalue check of the quadratic-form bound: builds the symmetric
// n x n matrix M_{kj} = b_{|k-j|} + b_0 [k=j] and certifies
// min eig(M) >= s_n - 1e-12.
KernelCertificate kernel_form_certificate(double alpha, double tau, int n);

// Precomputed L1 machinery for one (alpha, tau) pair.  Immutable after
// construction.
struct L1Kernel {
    double alpha;
    double tau;
    int n_max;
    std::vector<double> b;
    std::vector<double> btilde; // empty when alpha == 1
    double s_lower;             // 0 when alpha == 1

    L1Kernel(double alpha_, double tau_, int n_max_);
};

// Append-only record of time increments delta phi^{j+1} = phi^{j+1} - phi^j.
struct History {
    Grid grid;
    std::vector<Field> increments;

    History() = default;
    explicit History(const Grid& g) : grid(g) {}

    int step_count() const { return static_cast<int>(increments.size()); }
    void append(Field delta) {
        if (!(delta.grid == grid)) throw DomainError("history: grid mismatch");
        increments.push_back(std::move(delta));
    }
};

// Known part of the L1 sum at step k: sum_{j=1}^{k} b_j * dphi^{k+1-j}.
// The j=0 term contains the unknown and belongs to the implicit symbol.
Field history_convolution(const History& h, const L1Kernel& kernel, int k);

} // namespace fracpf
