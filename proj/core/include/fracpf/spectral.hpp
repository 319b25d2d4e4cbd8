#pragma once

#include <cstdint>
#include <functional>

#include "fracpf/grid.hpp"

namespace fracpf {

enum class DiffOp { laplacian, bilaplacian, gradient, divergence };

// Forward transform, unnormalized: c_{pq} = sum_{ij} f_{ij} exp(-i k.x).
SpectralField forward_transform(const Field& f);

// Inverse transform with 1/(nx*ny) normalization; exact inverse of forward
// up to roundoff.
Field inverse_transform(const SpectralField& F);

// Spectral differentiation.  laplacian: multiply by -|k|^2, bilaplacian:
// |k|^4.  Nyquist modes of first derivatives are zeroed.
Field apply_operator(const Field& f, DiffOp op);

// Gradient components (Nyquist first-derivative modes zeroed).
void gradient(const Field& f, Field& gx, Field& gy);

// div(vx, vy) via spectral differentiation.
Field divergence(const Field& vx, const Field& vy);

// Solve (a - b*Lap + c*Lap^2) u = rhs mode by mode.  Throws SingularSymbol
// if any modal symbol has magnitude < 1e-14.
Field solve_modified_helmholtz(const Field& rhs, double a, double b, double c);

// Spectral-space variant: divides coefficients in place.
void solve_modified_helmholtz_inplace(SpectralField& rhs_hat, double a, double b, double c);

double mean(const Field& f);

// Evaluate a pointwise nonlinearity of several input fields on a 3/2
// zero-padded grid and truncate back (classical dealiasing rule).  fn maps
// the tuple of input values at one point to one output value.
Field dealiased_pointwise(const std::vector<const Field*>& inputs,
                          const std::function<double(const double*)>& fn);

// Transform counters, for cost assertions in tests.
std::uint64_t forward_transform_count();
std::uint64_t inverse_transform_count();
void reset_transform_counters();

} // namespace fracpf
