#pragma once

#include <cstdint>
#include <functional>

#include "fracpf/fracops.hpp"
#include "fracpf/models.hpp"

namespace fracpf {

struct RunState {
    Field phi;
    History history;
    int step = 0;
    double time = 0.0;

    explicit RunState(Field initial) : phi(std::move(initial)), history(phi.grid) {}
};

struct SolverSettings {
    double tau = 0.0;
    int n_steps = 0;
    double nonlinear_tol = 1e-10;
    int nonlinear_max_iter = 200;
    std::uint64_t memory_cap_bytes = 0; // 0 = unlimited

    void validate() const {
        if (!(tau > 0.0)) throw DomainError("tau must be positive");
        if (n_steps < 0) throw DomainError("n_steps must be nonnegative");
        if (!(nonlinear_tol > 0.0) || nonlinear_tol > 1e-4)
            throw DomainError("nonlinear_tol must be in (0, 1e-4]");
        if (nonlinear_max_iter < 1) throw DomainError("nonlinear_max_iter must be >= 1");
    }
};

// One L1 step of the given scheme; appends the increment to state.history
// and advances step/time.  All solves are single diagonal spectral solves;
// convex-split variants wrap them in a Picard iteration.
void step_ac_stabilized(RunState& state, const ModelSpec& spec, const L1Kernel& kernel,
                        const SolverSettings& settings);
void step_ac_convex_split(RunState& state, const ModelSpec& spec, const L1Kernel& kernel,
                          const SolverSettings& settings);
void step_ch_stabilized(RunState& state, const ModelSpec& spec, const L1Kernel& kernel,
                        const SolverSettings& settings);
void step_ch_convex_split(RunState& state, const ModelSpec& spec, const L1Kernel& kernel,
                          const SolverSettings& settings);
void step_mbe_stabilized(RunState& state, const ModelSpec& spec, const L1Kernel& kernel,
                         const SolverSettings& settings);
void step_mbe_convex_split(RunState& state, const ModelSpec& spec, const L1Kernel& kernel,
                           const SolverSettings& settings);

// Dispatch on (family, splitting).
void step(RunState& state, const ModelSpec& spec, const L1Kernel& kernel,
          const SolverSettings& settings);

struct SeriesReport {
    std::vector<double> times;
    std::vector<double> steps;
    std::vector<EnergyValue> energy;
    std::vector<double> mass;
    std::vector<double> max_abs;
};

struct RunObservers {
    int energy_stride = 1;
    int snapshot_stride = 0; // 0 = no snapshots
    std::function<void(const RunState&)> on_snapshot;
};

// Outer time loop: advances n_steps, recording energy/mass/max-norm at the
// configured stride (step 0 always recorded).  Deterministic for a given
// input.  Throws BudgetExceeded before allocating if the increment history
// would exceed memory_cap_bytes.
std::pair<RunState, SeriesReport> run(const ModelSpec& spec, const L1Kernel& kernel,
                                      const SolverSettings& settings, Field initial,
                                      const RunObservers& observers = {});

} // namespace fracpf
