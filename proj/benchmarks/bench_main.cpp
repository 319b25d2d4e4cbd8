#include <benchmark/benchmark.h>

#include "fracpf/fracops.hpp"
#include "fracpf/init.hpp"
#include "fracpf/spectral.hpp"
#include "fracpf/stepper.hpp"

using namespace fracpf;

static void BM_transform_roundtrip(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Grid g(n, n, 2.0, 2.0);
    Field f = initial_random(g, 1, 1.0);
    for (auto _ : state) {
        Field back = inverse_transform(forward_transform(f));
        benchmark::DoNotOptimize(back.v.data());
    }
    state.SetItemsProcessed(state.iterations() * g.size());
}
BENCHMARK(BM_transform_roundtrip)->Arg(64)->Arg(128)->Arg(256);

static void BM_history_convolution(benchmark::State& state) {
    const int n = 128;
    const int depth = static_cast<int>(state.range(0));
    Grid g(n, n, 2.0, 2.0);
    L1Kernel kernel(0.5, 0.01, depth + 1);
    History h(g);
    for (int k = 0; k < depth; ++k) h.append(initial_random(g, k + 1, 1e-3));
    for (auto _ : state) {
        Field c = history_convolution(h, kernel, depth);
        benchmark::DoNotOptimize(c.v.data());
    }
    state.SetItemsProcessed(state.iterations() * g.size() * depth);
}
BENCHMARK(BM_history_convolution)->Arg(100)->Arg(1000)->Arg(4000);

static void BM_ac_stabilized_step(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Grid g(n, n, 2.0, 2.0);
    const double tau = 0.1;
    const int horizon = 1 << 20;
    L1Kernel kernel(0.5, tau, horizon);
    ModelSpec spec;
    spec.epsilon = spec.gamma = 0.05;
    spec.stabilization_S = 0.1;
    SolverSettings st;
    st.tau = tau;
    st.n_steps = horizon;
    RunState rs{initial_flower(g, spec.epsilon)};
    for (auto _ : state) step_ac_stabilized(rs, spec, kernel, st);
    state.SetItemsProcessed(state.iterations() * g.size());
}
BENCHMARK(BM_ac_stabilized_step)->Arg(64)->Arg(128)->Arg(256);

static void BM_ch_convex_split_step(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Grid g(n, n, 2.0, 2.0);
    const double tau = 0.001;
    const int horizon = 1 << 20;
    L1Kernel kernel(0.5, tau, horizon);
    ModelSpec spec;
    spec.family = Family::CH;
    spec.epsilon = 0.05;
    spec.gamma = 0.05 * 0.05;
    spec.splitting = Splitting::convex_split;
    SolverSettings st;
    st.tau = tau;
    st.n_steps = horizon;
    st.nonlinear_tol = 1e-10;
    RunState rs{initial_random(g, 42, 1.0)};
    for (auto _ : state) step_ch_convex_split(rs, spec, kernel, st);
    state.SetItemsProcessed(state.iterations() * g.size());
}
BENCHMARK(BM_ch_convex_split_step)->Arg(64)->Arg(128);

BENCHMARK_MAIN();
