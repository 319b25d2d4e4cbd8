#include "fracpf/init.hpp"

#include <cmath>

namespace fracpf {

Field initial_flower(const Grid& grid, double epsilon, bool corner_origin) {
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
    Field f(grid);
    const double x0 = corner_origin ? 0.0 : grid.lx / 2.0;
    const double y0 = corner_origin ? 0.0 : grid.ly / 2.0;
    const double scale = 1.0 / (std::sqrt(2.0) * epsilon);
    for (int i = 0; i < grid.nx; ++i) {
        double x = grid.x(i) - x0;
        for (int j = 0; j < grid.ny; ++j) {
            double y = grid.y(j) - y0;
            double r = std::sqrt(x * x + y * y);
            double theta = std::atan2(y, x);
            f(i, j) = std::tanh(scale * (r - 0.25 - (1.0 + std::cos(4.0 * theta)) / 16.0));
        }
    }
    return f;
}

Field initial_random(const Grid& grid, std::uint64_t seed, double amplitude) {
    if (!(amplitude > 0.0)) throw DomainError("amplitude must be positive");
    Field f(grid);
    SplitMix64 rng(seed);
    const double inv = 1.0 / 18446744073709551616.0; // 2^-64
    for (double& x : f.v) x = amplitude * (2.0 * (rng.next() * inv) - 1.0);
    return f;
}

} // namespace fracpf
