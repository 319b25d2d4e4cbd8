#include "fracpf/stepper.hpp"

#include <cmath>

#include "fracpf/spectral.hpp"

namespace fracpf {

namespace {

// b0/(gamma*tau) * phi^k - H/(gamma*tau): the part of the L1 sum that is
// known at step k, moved to the right-hand side.
Field l1_known_part(const RunState& state, const L1Kernel& kernel, double gamma, double tau) {
    Field rhs = history_convolution(state.history, kernel, state.step);
    const double c = 1.0 / (gamma * tau);
    const double b0c = kernel.b[0] * c;
    for (std::size_t i = 0; i < rhs.v.size(); ++i)
        rhs.v[i] = b0c * state.phi.v[i] - c * rhs.v[i];
    return rhs;
}

Field pointwise_bulk_force(const Field& phi, const ModelSpec& spec) {
    if (spec.dealias) {
        return dealiased_pointwise({&phi},
                                   [&](const double* a) { return bulk_f(a[0], spec.potential); });
    }
    Field out(phi.grid);
    for (std::size_t i = 0; i < phi.v.size(); ++i) out.v[i] = bulk_f(phi.v[i], spec.potential);
    return out;
}

Field pointwise_cube(const Field& phi, bool dealias) {
    if (dealias)
        return dealiased_pointwise({&phi}, [](const double* a) { return a[0] * a[0] * a[0]; });
    Field out(phi.grid);
    for (std::size_t i = 0; i < phi.v.size(); ++i) out.v[i] = phi.v[i] * phi.v[i] * phi.v[i];
    return out;
}

// div f(grad phi) / eps for the MBE families.
Field mbe_force_divergence(const Field& phi, const ModelSpec& spec, bool implicit_part_only) {
    Field gx, gy;
    gradient(phi, gx, gy);
    Field fx, fy;
    if (implicit_part_only) {
        // f_i(v) = |v|^2 v for the slope-selection convex split
        auto mul = [](const double* a) { return (a[0] * a[0] + a[1] * a[1]) * a[0]; };
        if (spec.dealias) {
            fx = dealiased_pointwise({&gx, &gy}, mul);
            fy = dealiased_pointwise({&gy, &gx}, mul);
        } else {
            fx = Field(phi.grid);
            fy = Field(phi.grid);
            for (std::size_t i = 0; i < gx.v.size(); ++i) {
                double v2 = gx.v[i] * gx.v[i] + gy.v[i] * gy.v[i];
                fx.v[i] = v2 * gx.v[i];
                fy.v[i] = v2 * gy.v[i];
            }
        }
    } else if (spec.dealias) {
        const bool slope = spec.family == Family::MBE_slope;
        auto mul = [slope](const double* a) {
            double v2 = a[0] * a[0] + a[1] * a[1];
            double s = slope ? (v2 - 1.0) : -1.0 / (1.0 + v2);
            return s * a[0];
        };
        fx = dealiased_pointwise({&gx, &gy}, mul);
        fy = dealiased_pointwise({&gy, &gx}, mul);
    } else {
        mbe_force(gx, gy, spec.family, fx, fy);
    }
    Field div = divergence(fx, fy);
    for (double& x : div.v) x /= spec.epsilon;
    return div;
}

void commit(RunState& state, Field phi_next, double tau) {
    Field delta(state.phi.grid);
    for (std::size_t i = 0; i < delta.v.size(); ++i) delta.v[i] = phi_next.v[i] - state.phi.v[i];
    state.history.append(std::move(delta));
    state.phi = std::move(phi_next);
    state.step += 1;
    state.time = state.step * tau;
}

double max_abs_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.v.size(); ++i) m = std::max(m, std::abs(a.v[i] - b.v[i]));
    return m;
}

} // namespace

void step_ac_stabilized(RunState& state, const ModelSpec& spec, const L1Kernel& kernel,
                        const SolverSettings& settings) {
    spec.validate();
    const double tau = settings.tau, gam = spec.gamma, eps = spec.epsilon;
    const double sg = spec.stabilization_S / gam;
    Field rhs = l1_known_part(state, kernel, gam, tau);
    Field force = pointwise_bulk_force(state.phi, spec);
    for (std::size_t i = 0; i < rhs.v.size(); ++i)
        rhs.v[i] += sg * state.phi.v[i] - force.v[i] / eps;
    Field next = solve_modified_helmholtz(rhs, kernel.b[0] / (gam * tau) + sg, eps, 0.0);
    commit(state, std::move(next), tau);
}

void step_ac_convex_split(RunState& state, const ModelSpec& spec, const L1Kernel& kernel,
                          const SolverSettings& settings) {
    spec.validate();
    if (spec.potential != Potential::quartic)
        throw UnsupportedSplit("AC convex split requires the quartic potential");
    const double tau = settings.tau, gam = spec.gamma, eps = spec.epsilon;
    Field rhs0 = l1_known_part(state, kernel, gam, tau);
    for (std::size_t i = 0; i < rhs0.v.size(); ++i)
        rhs0.v[i] += state.phi.v[i] / eps; // f_e(phi^k) explicit
    const double a = kernel.b[0] / (gam * tau);

    Field iter = state.phi;
    for (int m = 0; m < settings.nonlinear_max_iter; ++m) {
        Field cube = pointwise_cube(iter, spec.dealias);
        Field rhs = rhs0;
        for (std::size_t i = 0; i < rhs.v.size(); ++i) rhs.v[i] -= cube.v[i] / eps;
        Field next = solve_modified_helmholtz(rhs, a, eps, 0.0);
        double d = max_abs_diff(next, iter);
        iter = std::move(next);
        if (d <= settings.nonlinear_tol) {
            commit(state, std::move(iter), tau);
            return;
        }
    }
    throw NonlinearDivergence("AC convex split: Picard iteration did not converge");
}

void step_ch_stabilized(RunState& state, const ModelSpec& spec, const L1Kernel& kernel,
                        const SolverSettings& settings) {
    spec.validate();
    const double tau = settings.tau, gam = spec.gamma, eps = spec.epsilon;
    const double sg = spec.stabilization_S / gam;
    Field rhs = l1_known_part(state, kernel, gam, tau);
    Field force = pointwise_bulk_force(state.phi, spec);
    for (std::size_t i = 0; i < force.v.size(); ++i)
        force.v[i] = force.v[i] / eps - sg * state.phi.v[i];

    SpectralField G = forward_transform(rhs);
    SpectralField Gb = forward_transform(force);
    const Grid& g = state.phi.grid;
    const int ncq = g.ny / 2 + 1;
    for (int p = 0; p < g.nx; ++p) {
        double kx = g.kx(p);
        for (int q = 0; q < ncq; ++q) {
            double ky = g.ky(q);
            double k2 = kx * kx + ky * ky;
            G(p, q) += -k2 * Gb(p, q); // Laplacian applied to the explicit chemical force
        }
    }
    solve_modified_helmholtz_inplace(G, kernel.b[0] / (gam * tau), sg, eps);
    commit(state, inverse_transform(G), tau);
}

void step_ch_convex_split(RunState& state, const ModelSpec& spec, const L1Kernel& kernel,
                          const SolverSettings& settings) {
    spec.validate();
    if (spec.potential != Potential::quartic)
        throw UnsupportedSplit("CH convex split requires the quartic potential");
    const double tau = settings.tau, gam = spec.gamma, eps = spec.epsilon;
    const double a = kernel.b[0] / (gam * tau);
    Field rhs0 = l1_known_part(state, kernel, gam, tau);
    SpectralField G0 = forward_transform(rhs0);

    const Grid& g = state.phi.grid;
    const int ncq = g.ny / 2 + 1;
    Field iter = state.phi;
    for (int m = 0; m < settings.nonlinear_max_iter; ++m) {
        Field cube = pointwise_cube(iter, spec.dealias);
        Field chem(g);
        for (std::size_t i = 0; i < chem.v.size(); ++i)
            chem.v[i] = (cube.v[i] - state.phi.v[i]) / eps; // f_i(iter) - f_e(phi^k)
        SpectralField G = G0;
        SpectralField Gc = forward_transform(chem);
        for (int p = 0; p < g.nx; ++p) {
            double kx = g.kx(p);
            for (int q = 0; q < ncq; ++q) {
                double ky = g.ky(q);
                double k2 = kx * kx + ky * ky;
                G(p, q) += -k2 * Gc(p, q);
            }
        }
        solve_modified_helmholtz_inplace(G, a, 0.0, eps);
        Field next = inverse_transform(G);
        double d = max_abs_diff(next, iter);
        iter = std::move(next);
        if (d <= settings.nonlinear_tol) {
            commit(state, std::move(iter), tau);
            return;
        }
    }
    throw NonlinearDivergence("CH convex split: Picard iteration did not converge");
}

void step_mbe_stabilized(RunState& state, const ModelSpec& spec, const L1Kernel& kernel,
                         const SolverSettings& settings) {
    spec.validate();
    if (spec.family != Family::MBE_slope && spec.family != Family::MBE_noslope)
        throw DomainError("step_mbe_stabilized: not an MBE family");
    const double tau = settings.tau, gam = spec.gamma, eps = spec.epsilon;
    const double sg = spec.stabilization_S / gam;
    Field rhs = l1_known_part(state, kernel, gam, tau);
    Field div = mbe_force_divergence(state.phi, spec, /*implicit_part_only=*/false);
    Field lap = apply_operator(state.phi, DiffOp::laplacian);
    for (std::size_t i = 0; i < rhs.v.size(); ++i) rhs.v[i] += div.v[i] - sg * lap.v[i];
    Field next = solve_modified_helmholtz(rhs, kernel.b[0] / (gam * tau), sg, eps);
    commit(state, std::move(next), tau);
}

void step_mbe_convex_split(RunState& state, const ModelSpec& spec, const L1Kernel& kernel,
                           const SolverSettings& settings) {
    spec.validate();
    if (spec.family != Family::MBE_slope)
        throw UnsupportedSplit("MBE convex split is defined for the slope-selection model");
    const double tau = settings.tau, gam = spec.gamma, eps = spec.epsilon;
    const double a = kernel.b[0] / (gam * tau);
    Field rhs0 = l1_known_part(state, kernel, gam, tau);
    Field lap = apply_operator(state.phi, DiffOp::laplacian);
    for (std::size_t i = 0; i < rhs0.v.size(); ++i)
        rhs0.v[i] -= lap.v[i] / eps; // div f_e(grad phi^k) = lap phi^k

    Field iter = state.phi;
    for (int m = 0; m < settings.nonlinear_max_iter; ++m) {
        Field div = mbe_force_divergence(iter, spec, /*implicit_part_only=*/true);
        Field rhs = rhs0;
        for (std::size_t i = 0; i < rhs.v.size(); ++i) rhs.v[i] += div.v[i];
        Field next = solve_modified_helmholtz(rhs, a, 0.0, eps);
        double d = max_abs_diff(next, iter);
        iter = std::move(next);
        if (d <= settings.nonlinear_tol) {
            commit(state, std::move(iter), tau);
            return;
        }
    }
    throw NonlinearDivergence("MBE convex split: Picard iteration did not converge");
}

void step(RunState& state, const ModelSpec& spec, const L1Kernel& kernel,
          const SolverSettings& settings) {
    switch (spec.family) {
    case Family::AC:
        spec.splitting == Splitting::stabilized ? step_ac_stabilized(state, spec, kernel, settings)
                                                : step_ac_convex_split(state, spec, kernel, settings);
        break;
    case Family::CH:
        spec.splitting == Splitting::stabilized ? step_ch_stabilized(state, spec, kernel, settings)
                                                : step_ch_convex_split(state, spec, kernel, settings);
        break;
    default:
        spec.splitting == Splitting::stabilized
            ? step_mbe_stabilized(state, spec, kernel, settings)
            : step_mbe_convex_split(state, spec, kernel, settings);
    }
}

std::pair<RunState, SeriesReport> run(const ModelSpec& spec, const L1Kernel& kernel,
                                      const SolverSettings& settings, Field initial,
                                      const RunObservers& observers) {
    spec.validate();
    settings.validate();
    if (observers.energy_stride < 1) throw DomainError("energy_stride must be >= 1");

    const std::uint64_t bytes_per_field = initial.grid.size() * sizeof(double);
    if (settings.memory_cap_bytes > 0 &&
        bytes_per_field * static_cast<std::uint64_t>(settings.n_steps) > settings.memory_cap_bytes)
        throw BudgetExceeded("increment history would exceed the configured memory cap");
    if (settings.n_steps > 0 && kernel.n_max < settings.n_steps)
        throw DomainError("kernel n_max smaller than n_steps");

    RunState state(std::move(initial));
    SeriesReport report;
    auto record = [&](const RunState& s) {
        report.times.push_back(s.time);
        report.steps.push_back(static_cast<double>(s.step));
        report.energy.push_back(energy(s.phi, spec));
        report.mass.push_back(mean(s.phi));
        report.max_abs.push_back(s.phi.max_abs());
    };
    record(state);
    if (observers.snapshot_stride > 0 && observers.on_snapshot) observers.on_snapshot(state);

    for (int k = 0; k < settings.n_steps; ++k) {
        step(state, spec, kernel, settings);
        if (state.step % observers.energy_stride == 0) record(state);
        if (observers.snapshot_stride > 0 && observers.on_snapshot &&
            state.step % observers.snapshot_stride == 0)
            observers.on_snapshot(state);
    }
    return {std::move(state), std::move(report)};
}

} // namespace fracpf
