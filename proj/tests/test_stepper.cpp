#include <doctest.h>

#include <cmath>

#include "fracpf/diagnostics.hpp"
#include "fracpf/init.hpp"
#include "fracpf/spectral.hpp"
#include "fracpf/stepper.hpp"
#include "oracles.hpp"

using namespace fracpf;

namespace {

ModelSpec ac_spec(double S = 0.1, Potential pot = Potential::quartic,
                  Splitting split = Splitting::stabilized) {
    ModelSpec s;
    s.family = Family::AC;
    s.epsilon = 0.05;
    s.gamma = 0.05;
    s.stabilization_S = S;
    s.potential = pot;
    s.splitting = split;
    return s;
}

SolverSettings settings(double tau, int n_steps, double tol = 1e-12) {
    SolverSettings st;
    st.tau = tau;
    st.n_steps = n_steps;
    st.nonlinear_tol = tol;
    st.nonlinear_max_iter = 500;
    return st;
}

} // namespace

TEST_CASE("constant equilibria are fixed points of every scheme") {
    Grid g(16, 16, 2.0, 2.0);
    L1Kernel kernel(0.5, 0.05, 8);
    SolverSettings st = settings(0.05, 0);

    // AC, stabilized and convex split: phi = 1 is a well minimum
    for (auto split : {Splitting::stabilized, Splitting::convex_split}) {
        ModelSpec spec = ac_spec(0.1, Potential::quartic, split);
        RunState state{Field(g, 1.0)};
        for (int k = 0; k < 5; ++k) step(state, spec, kernel, st);
        for (double x : state.phi.v) CHECK(x == doctest::Approx(1.0).epsilon(1e-13));
    }

    // CH: any constant is stationary (chemical potential is spatially flat)
    for (auto split : {Splitting::stabilized, Splitting::convex_split}) {
        ModelSpec spec = ac_spec(0.1, Potential::quartic, split);
        spec.family = Family::CH;
        RunState state{Field(g, 0.3)};
        for (int k = 0; k < 5; ++k) step(state, spec, kernel, st);
        for (double x : state.phi.v) CHECK(x == doctest::Approx(0.3).epsilon(1e-12).scale(1.0));
    }

    // MBE: the flat surface phi = 0 is stationary for both forms
    for (auto fam : {Family::MBE_slope, Family::MBE_noslope}) {
        ModelSpec spec = ac_spec(0.1);
        spec.family = fam;
        spec.epsilon = 0.1;
        spec.gamma = 0.1;
        RunState state{Field(g, 0.0)};
        for (int k = 0; k < 5; ++k) step_mbe_stabilized(state, spec, kernel, st);
        for (double x : state.phi.v) CHECK(std::abs(x) < 1e-14);
    }
}

TEST_CASE("alpha = 1 reproduces classical backward Euler, all six schemes") {
    Grid g(16, 16, 2.0, 2.0);
    const double tau = 0.02;
    const int n_steps = 5;
    L1Kernel kernel(1.0, tau, n_steps);
    SolverSettings st = settings(tau, n_steps, 1e-13);
    oracles::BEParams p{0.05, 0.05, 0.1, tau};

    Field ic = oracles::random_field(g, 77, 0.4);
    Field ic_small = oracles::random_field(g, 78, 0.01);
    Field ic_mid = oracles::random_field(g, 79, 0.2);

    auto check_match = [](const Field& a, const Field& b) {
        for (std::size_t i = 0; i < a.v.size(); ++i)
            CHECK(std::abs(a.v[i] - b.v[i]) <= 1e-10);
    };

    SUBCASE("AC stabilized") {
        ModelSpec spec = ac_spec(0.1);
        RunState state{ic};
        Field ref = ic;
        for (int k = 0; k < n_steps; ++k) {
            step_ac_stabilized(state, spec, kernel, st);
            ref = oracles::be_ac_stabilized(ref, p);
        }
        check_match(state.phi, ref);
    }
    SUBCASE("AC convex split") {
        ModelSpec spec = ac_spec(0.0, Potential::quartic, Splitting::convex_split);
        RunState state{ic};
        Field ref = ic;
        for (int k = 0; k < n_steps; ++k) {
            step_ac_convex_split(state, spec, kernel, st);
            ref = oracles::be_ac_convex_split(ref, p, 1e-13, 500);
        }
        check_match(state.phi, ref);
    }
    SUBCASE("CH stabilized") {
        ModelSpec spec = ac_spec(0.1);
        spec.family = Family::CH;
        RunState state{ic};
        Field ref = ic;
        for (int k = 0; k < n_steps; ++k) {
            step_ch_stabilized(state, spec, kernel, st);
            ref = oracles::be_ch_stabilized(ref, p);
        }
        check_match(state.phi, ref);
    }
    SUBCASE("CH convex split") {
        // wider interface keeps the Picard iteration contractive
        ModelSpec spec = ac_spec(0.0, Potential::quartic, Splitting::convex_split);
        spec.family = Family::CH;
        spec.epsilon = 0.2;
        oracles::BEParams pch{0.2, 0.05, 0.0, tau};
        RunState state{ic_mid};
        Field ref = ic_mid;
        for (int k = 0; k < n_steps; ++k) {
            step_ch_convex_split(state, spec, kernel, st);
            ref = oracles::be_ch_convex_split(ref, pch, 1e-13, 500);
        }
        check_match(state.phi, ref);
    }
    SUBCASE("MBE stabilized, both forms") {
        for (auto fam : {Family::MBE_slope, Family::MBE_noslope}) {
            ModelSpec spec = ac_spec(0.1);
            spec.family = fam;
            spec.epsilon = 0.1;
            spec.gamma = 0.1;
            oracles::BEParams pm{0.1, 0.1, 0.1, tau};
            RunState state{ic_small};
            Field ref = ic_small;
            for (int k = 0; k < n_steps; ++k) {
                step_mbe_stabilized(state, spec, kernel, st);
                ref = oracles::be_mbe_stabilized(ref, pm, fam);
            }
            check_match(state.phi, ref);
        }
    }
    SUBCASE("MBE convex split") {
        ModelSpec spec = ac_spec(0.0, Potential::quartic, Splitting::convex_split);
        spec.family = Family::MBE_slope;
        spec.epsilon = 0.1;
        spec.gamma = 0.1;
        oracles::BEParams pm{0.1, 0.1, 0.0, tau};
        RunState state{ic_small};
        Field ref = ic_small;
        for (int k = 0; k < n_steps; ++k) {
            step_mbe_convex_split(state, spec, kernel, st);
            ref = oracles::be_mbe_convex_split(ref, pm, 1e-13, 500);
        }
        check_match(state.phi, ref);
    }
}

TEST_CASE("AC stabilized matches a dense linear-algebra replay on 8x8") {
    Grid g(8, 8, 2.0, 2.0);
    const double alpha = 0.5, tau = 0.05, eps = 0.05, gam = 0.05, S = 0.1;
    const int n_steps = 3;
    L1Kernel kernel(alpha, tau, n_steps);
    ModelSpec spec = ac_spec(S);
    SolverSettings st = settings(tau, n_steps);

    Field ic = oracles::random_field(g, 55, 0.5);
    RunState state{ic};

    // independent replay: dense matrix solve plus naive history sums
    Eigen::MatrixXd A = (kernel.b[0] / (gam * tau) + S / gam) * Eigen::MatrixXd::Identity(64, 64) +
                        eps * (-oracles::dense_laplacian(g));
    auto lu = A.fullPivLu();
    std::vector<Eigen::VectorXd> hist;
    Eigen::VectorXd phi = oracles::to_vec(ic);
    for (int k = 0; k < n_steps; ++k) {
        step_ac_stabilized(state, spec, kernel, st);

        Eigen::VectorXd rhs = (kernel.b[0] / (gam * tau)) * phi;
        for (int j = 1; j <= k; ++j) rhs -= (kernel.b[j] / (gam * tau)) * hist[k - j];
        for (int i = 0; i < 64; ++i)
            rhs[i] += (S / gam) * phi[i] - bulk_f(phi[i], Potential::quartic) / eps;
        Eigen::VectorXd next = lu.solve(rhs);
        hist.push_back(next - phi);
        phi = next;

        for (std::size_t i = 0; i < state.phi.v.size(); ++i)
            CHECK(std::abs(state.phi.v[i] - phi[static_cast<long>(i)]) <= 1e-11);
    }
}

TEST_CASE("convex-split Picard iterates satisfy the implicit equation") {
    Grid g(32, 32, 2.0, 2.0);
    const double alpha = 0.5, tau = 0.05, eps = 0.05, gam = 0.05;
    const double tol = 1e-12;
    L1Kernel kernel(alpha, tau, 4);
    ModelSpec spec = ac_spec(0.0, Potential::quartic, Splitting::convex_split);
    SolverSettings st = settings(tau, 4, tol);

    RunState state{initial_flower(g, eps)};
    for (int k = 0; k < 2; ++k) step_ac_convex_split(state, spec, kernel, st);

    // capture the known part before the final step, then take it
    const double a = kernel.b[0] / (gam * tau);
    Field conv = history_convolution(state.history, kernel, state.step);
    Field prev = state.phi;
    step_ac_convex_split(state, spec, kernel, st);

    // residual of (b0/(g tau)) phi - eps lap phi + phi^3/eps = known + phi^k/eps
    Field lap = apply_operator(state.phi, DiffOp::laplacian);
    for (std::size_t i = 0; i < state.phi.v.size(); ++i) {
        double lhs = a * state.phi.v[i] - eps * lap.v[i] +
                     state.phi.v[i] * state.phi.v[i] * state.phi.v[i] / eps;
        double rhs = a * prev.v[i] - conv.v[i] / (gam * tau) + prev.v[i] / eps;
        CHECK(std::abs(lhs - rhs) <= 200.0 * tol / eps + 1e-11);
    }
}

TEST_CASE("CH and MBE schemes conserve the mean exactly") {
    Grid g(32, 32, 2.0, 2.0);
    const double tau = 0.01;
    const int n_steps = 50;

    struct Case {
        Family fam;
        Splitting split;
        Potential pot;
        double S, eps, gam, amp, tau;
    };
    // stabilized cases use the certified S; convex splits use regimes where
    // the Picard iteration stays contractive through gradient saturation
    const Case cases[] = {
        {Family::CH, Splitting::stabilized, Potential::truncated_quartic, 5.5, 0.05, 0.05, 0.5, tau},
        {Family::CH, Splitting::convex_split, Potential::quartic, 0.0, 0.2, 0.05, 0.2, tau},
        {Family::MBE_slope, Splitting::stabilized, Potential::quartic, 0.5, 0.1, 0.1, 0.01, tau},
        {Family::MBE_noslope, Splitting::stabilized, Potential::quartic, 0.0625, 0.1, 0.1, 0.01, tau},
        {Family::MBE_slope, Splitting::convex_split, Potential::quartic, 0.0, 0.5, 0.5, 0.01, 0.005},
    };
    for (const Case& c : cases) {
        ModelSpec spec = ac_spec(c.S, c.pot, c.split);
        spec.family = c.fam;
        spec.epsilon = c.eps;
        spec.gamma = c.gam;
        L1Kernel k(0.5, c.tau, n_steps);
        SolverSettings cst = settings(c.tau, n_steps);
        auto [state, report] = run(spec, k, cst, oracles::random_field(g, 91, c.amp));
        double m0 = report.mass.front();
        for (double m : report.mass) CHECK(std::abs(m - m0) <= 1e-13 * std::max(1.0, std::abs(m0)));
    }
}

TEST_CASE("run with n_steps = 0 records exactly the initial sample") {
    Grid g(16, 16, 2.0, 2.0);
    L1Kernel kernel(0.5, 0.1, 1);
    auto [state, report] = run(ac_spec(), kernel, settings(0.1, 0), Field(g, 0.5));
    CHECK(report.times.size() == 1);
    CHECK(report.times[0] == 0.0);
    CHECK(report.mass[0] == 0.5);
    CHECK(state.step == 0);
}

TEST_CASE("run is bitwise deterministic") {
    Grid g(32, 32, 2.0, 2.0);
    const int n_steps = 10;
    L1Kernel kernel(0.5, 0.1, n_steps);
    ModelSpec spec = ac_spec(0.1);
    SolverSettings st = settings(0.1, n_steps);
    Field ic = initial_flower(g, spec.epsilon);
    auto [s1, r1] = run(spec, kernel, st, ic);
    auto [s2, r2] = run(spec, kernel, st, ic);
    for (std::size_t i = 0; i < s1.phi.v.size(); ++i) CHECK(s1.phi.v[i] == s2.phi.v[i]);
    for (std::size_t i = 0; i < r1.energy.size(); ++i) {
        CHECK(r1.energy[i].total == r2.energy[i].total);
        CHECK(r1.mass[i] == r2.mass[i]);
    }
}

TEST_CASE("per-step transform cost does not grow with the history length") {
    Grid g(32, 32, 2.0, 2.0);
    const int n_steps = 40;
    L1Kernel kernel(0.5, 0.05, n_steps);
    ModelSpec spec = ac_spec(0.1);
    SolverSettings st = settings(0.05, n_steps);
    RunState state{initial_flower(g, spec.epsilon)};

    auto count_step = [&]() {
        reset_transform_counters();
        step_ac_stabilized(state, spec, kernel, st);
        return forward_transform_count() + inverse_transform_count();
    };
    std::uint64_t early = count_step();
    for (int k = 1; k < n_steps - 1; ++k) step_ac_stabilized(state, spec, kernel, st);
    std::uint64_t late = count_step();
    CHECK(late == early);
    CHECK(late <= 4);
}

TEST_CASE("run enforces the memory cap and the kernel horizon") {
    Grid g(32, 32, 2.0, 2.0);
    L1Kernel kernel(0.5, 0.1, 100);
    SolverSettings st = settings(0.1, 100);
    st.memory_cap_bytes = 100 * 1024; // far below 100 steps of 32x32 doubles
    CHECK_THROWS_AS(run(ac_spec(), kernel, st, Field(g, 0.0)), BudgetExceeded);

    L1Kernel short_kernel(0.5, 0.1, 5);
    CHECK_THROWS_AS(run(ac_spec(), short_kernel, settings(0.1, 10), Field(g, 0.0)), DomainError);
}

TEST_CASE("energy decreases monotonically for the stabilized AC flower run") {
    Grid g(64, 64, 2.0, 2.0);
    const int n_steps = 30;
    L1Kernel kernel(0.5, 0.1, n_steps);
    ModelSpec spec = ac_spec(5.5, Potential::truncated_quartic);
    SolverSettings st = settings(0.1, n_steps);
    auto [state, report] = run(spec, kernel, st, initial_flower(g, spec.epsilon));
    for (std::size_t i = 1; i < report.energy.size(); ++i)
        CHECK(report.energy[i].total <= report.energy[i - 1].total + 1e-10);
    CHECK(max_principle_overshoot(report) <= 0.05);
}

TEST_CASE("unsupported splittings are rejected") {
    Grid g(16, 16, 2.0, 2.0);
    L1Kernel kernel(0.5, 0.1, 4);
    SolverSettings st = settings(0.1, 4);
    RunState s1{Field(g, 0.5)};
    ModelSpec bad = ac_spec(0.1, Potential::truncated_quartic, Splitting::convex_split);
    CHECK_THROWS_AS(step_ac_convex_split(s1, bad, kernel, st), UnsupportedSplit);
    ModelSpec noslope = ac_spec(0.0, Potential::quartic, Splitting::convex_split);
    noslope.family = Family::MBE_noslope;
    RunState s2{Field(g, 0.0)};
    CHECK_THROWS_AS(step_mbe_convex_split(s2, noslope, kernel, st), UnsupportedSplit);
}
