#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "fracpf/errors.hpp"

namespace fracpf {

// Periodic tensor-product grid on [0,lx) x [0,ly).  nx, ny must be even so
// the Nyquist mode of the real-to-complex transform is well defined.
struct Grid {
    int nx = 0;
    int ny = 0;
    double lx = 0.0;
    double ly = 0.0;

    Grid() = default;
    Grid(int nx_, int ny_, double lx_, double ly_) : nx(nx_), ny(ny_), lx(lx_), ly(ly_) {
        if (nx < 4 || ny < 4 || nx % 2 != 0 || ny % 2 != 0)
            throw DomainError("grid dimensions must be even and >= 4");
        if (!(lx > 0.0) || !(ly > 0.0))
            throw DomainError("grid extents must be positive");
    }

    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
    double area() const { return lx * ly; }
    double x(int i) const { return lx * i / nx; }
    double y(int j) const { return ly * j / ny; }

    // Signed wavenumber of mode index p along x: p in [-nx/2, nx/2).
    double kx(int p) const {
        int s = p <= nx / 2 ? p : p - nx;
        return 2.0 * std::numbers::pi * s / lx;
    }
    double ky(int q) const {
        int s = q <= ny / 2 ? q : q - ny;
        return 2.0 * std::numbers::pi * s / ly;
    }

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.nx == b.nx && a.ny == b.ny && a.lx == b.lx && a.ly == b.ly;
    }
};

// Real-valued field sampled on a Grid, row-major: value(i,j) = v[i*ny + j].
struct Field {
    Grid grid;
    std::vector<double> v;

    Field() = default;
    explicit Field(const Grid& g, double fill = 0.0) : grid(g), v(g.size(), fill) {}

    double& operator()(int i, int j) { return v[static_cast<std::size_t>(i) * grid.ny + j]; }
    double operator()(int i, int j) const { return v[static_cast<std::size_t>(i) * grid.ny + j]; }

    double max_abs() const {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
};

// Half-spectrum coefficients of a real field: nx x (ny/2+1) complex values,
// unnormalized forward convention (zero mode = nx*ny*mean).
struct SpectralField {
    Grid grid;
    std::vector<std::complex<double>> c;

    SpectralField() = default;
    explicit SpectralField(const Grid& g)
        : grid(g), c(static_cast<std::size_t>(g.nx) * (g.ny / 2 + 1)) {}

    int ncq() const { return grid.ny / 2 + 1; }
    std::complex<double>& operator()(int p, int q) {
        return c[static_cast<std::size_t>(p) * ncq() + q];
    }
    std::complex<double> operator()(int p, int q) const {
        return c[static_cast<std::size_t>(p) * ncq() + q];
    }
};

} // namespace fracpf
