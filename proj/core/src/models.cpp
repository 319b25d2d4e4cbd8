#include "fracpf/models.hpp"

#include <cmath>

#include "fracpf/spectral.hpp"

namespace fracpf {

double bulk_F(double phi, Potential variant) {
    if (variant == Potential::truncated_quartic) {
        if (phi > 2.0) {
            double d = phi - 2.0;
            return 5.5 * d * d + 6.0 * d + 2.25;
        }
        if (phi < -2.0) {
            double d = phi + 2.0;
            return 5.5 * d * d - 6.0 * d + 2.25;
        }
    }
    double w = 1.0 - phi * phi;
    return 0.25 * w * w;
}

double bulk_f(double phi, Potential variant) {
    if (variant == Potential::truncated_quartic) {
        if (phi > 2.0) return 11.0 * (phi - 2.0) + 6.0;
        if (phi < -2.0) return 11.0 * (phi + 2.0) - 6.0;
    }
    return phi * phi * phi - phi;
}

std::pair<double, double> convex_split_f(double phi, Potential variant) {
    if (variant != Potential::quartic)
        throw UnsupportedSplit("convex splitting is defined for the quartic potential only");
    return {phi * phi * phi, phi};
}

void mbe_force(const Field& gradx, const Field& grady, Family family, Field& fx, Field& fy) {
    if (!(gradx.grid == grady.grid)) throw DomainError("mbe_force: grid mismatch");
    if (family != Family::MBE_slope && family != Family::MBE_noslope)
        throw DomainError("mbe_force: not an MBE family");
    fx = Field(gradx.grid);
    fy = Field(gradx.grid);
    const bool slope = family == Family::MBE_slope;
    for (std::size_t i = 0; i < gradx.v.size(); ++i) {
        double vx = gradx.v[i], vy = grady.v[i];
        double v2 = vx * vx + vy * vy;
        double s = slope ? (v2 - 1.0) : -1.0 / (1.0 + v2);
        fx.v[i] = s * vx;
        fy.v[i] = s * vy;
    }
}

namespace {

double mbe_bulk_F(double v2, Family family) {
    if (family == Family::MBE_slope) {
        double w = v2 - 1.0;
        return 0.25 * w * w;
    }
    return -0.5 * std::log(1.0 + v2);
}

// area-weighted L2 norm squared of the spectral derivative symbol applied
// to phi; power = 1 gives ||grad phi||^2, power = 2 gives ||lap phi||^2.
double derivative_norm_sq(const Field& phi, int power) {
    const Grid& g = phi.grid;
    SpectralField F = forward_transform(phi);
    const int ncq = g.ny / 2 + 1;
    const double n2 = static_cast<double>(g.nx) * g.ny * static_cast<double>(g.nx) * g.ny;
    double acc = 0.0;
    for (int p = 0; p < g.nx; ++p) {
        double kx = g.kx(p);
        for (int q = 0; q < ncq; ++q) {
            double ky = g.ky(q);
            double k2 = kx * kx + ky * ky;
            double w = (q == 0 || q == g.ny / 2) ? 1.0 : 2.0; // half-spectrum multiplicity
            double sym = power == 1 ? k2 : k2 * k2;
            acc += w * sym * std::norm(F(p, q));
        }
    }
    return g.area() * acc / n2;
}

} // namespace

EnergyValue energy(const Field& phi, const ModelSpec& spec) {
    spec.validate();
    const Grid& g = phi.grid;
    EnergyValue e;
    if (spec.family == Family::MBE_slope || spec.family == Family::MBE_noslope) {
        e.gradient_part = 0.5 * spec.epsilon * derivative_norm_sq(phi, 2);
        Field gx, gy;
        gradient(phi, gx, gy);
        double bulk = 0.0;
        for (std::size_t i = 0; i < gx.v.size(); ++i)
            bulk += mbe_bulk_F(gx.v[i] * gx.v[i] + gy.v[i] * gy.v[i], spec.family);
        e.bulk_part = g.area() * bulk / (static_cast<double>(g.size()) * spec.epsilon);
    } else {
        e.gradient_part = 0.5 * spec.epsilon * derivative_norm_sq(phi, 1);
        double bulk = 0.0;
        for (double x : phi.v) bulk += bulk_F(x, spec.potential);
        e.bulk_part = g.area() * bulk / (static_cast<double>(g.size()) * spec.epsilon);
    }
    e.total = e.gradient_part + e.bulk_part;
    return e;
}

} // namespace fracpf
