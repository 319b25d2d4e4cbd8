#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracpf/spectral.hpp"
#include "oracles.hpp"

using namespace fracpf;
using std::numbers::pi;

TEST_CASE("forward transform: constant field hits only the zero mode") {
    Grid g(8, 8, 2.0, 2.0);
    Field f(g, 1.0);
    SpectralField F = forward_transform(f);
    CHECK(F(0, 0).real() == doctest::Approx(64.0).epsilon(1e-14));
    for (int p = 0; p < g.nx; ++p)
        for (int q = 0; q < g.ny / 2 + 1; ++q)
            if (p != 0 || q != 0) CHECK(std::abs(F(p, q)) < 1e-11);
}

TEST_CASE("forward transform: single harmonic occupies two conjugate modes") {
    Grid g(16, 16, 3.0, 3.0);
    Field f(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) f(i, j) = std::cos(2.0 * pi * g.x(i) / g.lx);
    SpectralField F = forward_transform(f);
    // half-spectrum keeps (1,0) and its conjugate (nx-1,0)
    CHECK(F(1, 0).real() == doctest::Approx(128.0).epsilon(1e-12));
    CHECK(F(g.nx - 1, 0).real() == doctest::Approx(128.0).epsilon(1e-12));
    int nonzero = 0;
    for (int p = 0; p < g.nx; ++p)
        for (int q = 0; q < g.ny / 2 + 1; ++q)
            if (std::abs(F(p, q)) > 1e-9) ++nonzero;
    CHECK(nonzero == 2);
}

TEST_CASE("forward transform matches the direct DFT sum on random 16x16 input") {
    Grid g(16, 16, 2.0, 5.0);
    Field f = oracles::random_field(g, 7);
    SpectralField F = forward_transform(f);
    auto full = oracles::dft_full(f);
    for (int p = 0; p < g.nx; ++p)
        for (int q = 0; q < g.ny / 2 + 1; ++q)
            CHECK(std::abs(F(p, q) - full[static_cast<std::size_t>(p) * g.ny + q]) < 1e-12 * 256);
}

TEST_CASE("inverse(forward) roundtrip on random 32x32 input") {
    Grid g(32, 32, 1.0, 2.0);
    Field f = oracles::random_field(g, 3);
    Field back = inverse_transform(forward_transform(f));
    double scale = f.max_abs();
    for (std::size_t i = 0; i < f.v.size(); ++i)
        CHECK(std::abs(back.v[i] - f.v[i]) <= 1e-13 * scale);
}

TEST_CASE("inverse transform: zero spectrum and analytic single mode") {
    Grid g(8, 12, 2.0, 3.0);
    SpectralField Z(g);
    Field z = inverse_transform(Z);
    for (double x : z.v) CHECK(x == 0.0);

    // unit amplitude in mode (1,0) plus its conjugate partner -> 2cos(2 pi x/lx)/N
    SpectralField S(g);
    S(1, 0) = 1.0;
    S(g.nx - 1, 0) = 1.0;
    Field f = inverse_transform(S);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            double expect = 2.0 * std::cos(2.0 * pi * g.x(i) / g.lx) / (g.nx * g.ny);
            CHECK(f(i, j) == doctest::Approx(expect).epsilon(1e-13).scale(1.0));
        }
}

TEST_CASE("laplacian and bilaplacian act as analytic derivatives on harmonics") {
    Grid g(32, 32, 2.0 * pi, 2.0 * pi);
    Field f(g), f2(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            f(i, j) = std::cos(g.x(i));
            f2(i, j) = std::cos(2.0 * g.x(i));
        }
    Field lap = apply_operator(f, DiffOp::laplacian);
    Field bil = apply_operator(f2, DiffOp::bilaplacian);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            CHECK(lap(i, j) == doctest::Approx(-std::cos(g.x(i))).epsilon(1e-12).scale(1.0));
            CHECK(bil(i, j) == doctest::Approx(16.0 * std::cos(2.0 * g.x(i))).epsilon(1e-11).scale(1.0));
        }
}

TEST_CASE("laplacian of a constant field is identically zero") {
    Grid g(16, 16, 1.5, 2.5);
    Field lap = apply_operator(Field(g, 3.7), DiffOp::laplacian);
    for (double x : lap.v) CHECK(std::abs(x) < 1e-12);
}

TEST_CASE("div grad equals laplacian on smooth random data") {
    Grid g(32, 32, 2.0, 2.0);
    // random low-mode field, smooth by construction
    SpectralField S(g);
    Field noise = oracles::random_field(g, 11);
    S = forward_transform(noise);
    for (int p = 0; p < g.nx; ++p)
        for (int q = 0; q < g.ny / 2 + 1; ++q) {
            int ps = p <= g.nx / 2 ? p : p - g.nx;
            if (std::abs(ps) > 5 || q > 5) S(p, q) = 0.0;
        }
    Field f = inverse_transform(S);
    Field gx, gy;
    gradient(f, gx, gy);
    Field div = divergence(gx, gy);
    Field lap = apply_operator(f, DiffOp::laplacian);
    for (std::size_t i = 0; i < f.v.size(); ++i) CHECK(std::abs(div.v[i] - lap.v[i]) < 1e-11);
}

TEST_CASE("Parseval: grid mean of f^2 equals normalized spectral sum") {
    Grid g(16, 16, 2.0, 2.0);
    Field f = oracles::random_field(g, 19);
    SpectralField F = forward_transform(f);
    double direct = 0.0;
    for (double x : f.v) direct += x * x;
    direct /= static_cast<double>(g.size());
    double spectral = 0.0;
    for (int p = 0; p < g.nx; ++p)
        for (int q = 0; q < g.ny / 2 + 1; ++q) {
            double w = (q == 0 || q == g.ny / 2) ? 1.0 : 2.0;
            spectral += w * std::norm(F(p, q));
        }
    spectral /= static_cast<double>(g.size()) * static_cast<double>(g.size());
    CHECK(spectral == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("modified Helmholtz: identity and single-mode algebra") {
    Grid g(16, 16, 2.0 * pi, 2.0 * pi);
    Field rhs = oracles::random_field(g, 5);
    Field u = solve_modified_helmholtz(rhs, 1.0, 0.0, 0.0);
    for (std::size_t i = 0; i < u.v.size(); ++i) CHECK(u.v[i] == doctest::Approx(rhs.v[i]).epsilon(1e-13));

    Field c(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) c(i, j) = std::cos(g.x(i));
    Field u2 = solve_modified_helmholtz(c, 1.0, 1.0, 0.0);
    for (std::size_t i = 0; i < u2.v.size(); ++i)
        CHECK(u2.v[i] == doctest::Approx(0.5 * c.v[i]).epsilon(1e-12).scale(1.0));
}

TEST_CASE("modified Helmholtz inverts the composed spectral operator") {
    Grid g(16, 16, 2.0, 3.0);
    Field rhs = oracles::random_field(g, 23);
    double a = 2.0, b = 0.5, c = 0.1;
    Field u = solve_modified_helmholtz(rhs, a, b, c);
    Field lap = apply_operator(u, DiffOp::laplacian);
    Field bil = apply_operator(u, DiffOp::bilaplacian);
    double scale = rhs.max_abs();
    for (std::size_t i = 0; i < u.v.size(); ++i) {
        double residual = a * u.v[i] - b * lap.v[i] + c * bil.v[i] - rhs.v[i];
        CHECK(std::abs(residual) <= 1e-11 * scale);
    }
}

TEST_CASE("modified Helmholtz matches a dense linear solve on 8x8") {
    Grid g(8, 8, 2.0, 2.0);
    Field rhs = oracles::random_field(g, 29);
    double a = 2.0, b = 0.5, c = 0.1;
    Eigen::MatrixXd A = a * Eigen::MatrixXd::Identity(64, 64) - b * oracles::dense_laplacian(g) +
                        c * oracles::dense_bilaplacian(g);
    Eigen::VectorXd x = A.fullPivLu().solve(oracles::to_vec(rhs));
    Field u = solve_modified_helmholtz(rhs, a, b, c);
    for (std::size_t i = 0; i < u.v.size(); ++i)
        CHECK(u.v[i] == doctest::Approx(x[static_cast<long>(i)]).epsilon(1e-11).scale(1.0));
}

TEST_CASE("modified Helmholtz rejects singular symbols") {
    Grid g(8, 8, 2.0, 2.0);
    Field rhs(g, 1.0);
    CHECK_THROWS_AS(solve_modified_helmholtz(rhs, 0.0, 1.0, 0.0), SingularSymbol);
}

TEST_CASE("mean matches direct summation") {
    Grid g(16, 16, 2.0, 2.0);
    CHECK(mean(Field(g, 2.5)) == 2.5);

    Field c(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) c(i, j) = std::cos(2.0 * pi * g.x(i) / g.lx);
    CHECK(std::abs(mean(c)) < 1e-15);

    Field f = oracles::random_field(g, 31);
    double s = 0.0;
    for (double x : f.v) s += x;
    CHECK(mean(f) == s / static_cast<double>(f.v.size()));
}

TEST_CASE("dealiased cube of a single harmonic is alias-free") {
    // cos^3(kx) with k at a third of the Nyquist range aliases on the plain
    // grid product but not under the 3/2 rule
    Grid g(12, 12, 2.0 * pi, 2.0 * pi);
    Field f(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) f(i, j) = std::cos(4.0 * g.x(i));
    Field cube = dealiased_pointwise({&f}, [](const double* a) { return a[0] * a[0] * a[0]; });
    // cos^3(4x) = (3 cos 4x + cos 12x)/4; mode 12 aliases to mode 0 on n=12,
    // the dealiased product must keep only the resolvable 3/4 cos 4x part
    SpectralField C = forward_transform(cube);
    CHECK(C(4, 0).real() / (g.nx * g.ny) == doctest::Approx(0.375).epsilon(1e-12));
    CHECK(std::abs(C(0, 0)) < 1e-9);
}
