#pragma once

#include <limits>
#include <utility>

#include "fracpf/grid.hpp"

namespace fracpf {

enum class Family { AC, CH, MBE_slope, MBE_noslope };
enum class Potential { quartic, truncated_quartic };
enum class Splitting { stabilized, convex_split };

struct ModelSpec {
    Family family = Family::AC;
    double epsilon = 0.05;
    double gamma = 0.05;
    double stabilization_S = 0.0;
    Potential potential = Potential::quartic;
    Splitting splitting = Splitting::stabilized;
    bool dealias = false;

    void validate() const {
        if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
        if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
        if (stabilization_S < 0.0) throw DomainError("stabilization_S must be nonnegative");
    }

    // max f'(phi) for the active nonlinearity; infinity when unbounded.
    double lipschitz_bound() const {
        switch (family) {
        case Family::MBE_noslope: return 1.0 / 8.0;
        case Family::MBE_slope: return std::numeric_limits<double>::infinity();
        default:
            return potential == Potential::truncated_quartic
                       ? 11.0
                       : std::numeric_limits<double>::infinity();
        }
    }

    // Stabilization satisfying the discrete energy theorems: S* = gamma*L/(2 eps).
    double theorem_stabilization() const { return gamma * lipschitz_bound() / (2.0 * epsilon); }
};

struct EnergyValue {
    double total = 0.0;
    double gradient_part = 0.0;
    double bulk_part = 0.0;
};

// Double-well bulk potential F and its derivative f = F'.  The truncated
// variant continues quadratically outside [-2,2], C^1 at the seams, with
// F'' <= 11.
double bulk_F(double phi, Potential variant);
double bulk_f(double phi, Potential variant);

// Convex splitting f = f_i - f_e for the quartic double well: f_i = phi^3,
// f_e = phi.  Throws UnsupportedSplit for the truncated variant.
std::pair<double, double> convex_split_f(double phi, Potential variant);

// MBE bulk density F(v) and scalar force profile, as functions of the local
// gradient.  slope: F = (|v|^2-1)^2/4, f(v) = (|v|^2-1) v.
// noslope: F = -ln(1+|v|^2)/2, f(v) = -v/(1+|v|^2).
void mbe_force(const Field& gradx, const Field& grady, Family family, Field& fx, Field& fy);

// Discrete free energy.  AC/CH: (eps/2)||grad phi||^2 + <F(phi),1>/eps.
// MBE: (eps/2)||lap phi||^2 + <F(grad phi),1>/eps.  Derivative terms by
// Parseval, bulk terms by grid mean times area.
EnergyValue energy(const Field& phi, const ModelSpec& spec);

} // namespace fracpf
