#pragma once

#include <cstdint>

#include "fracpf/grid.hpp"

namespace fracpf {

// tanh flower profile: phi0 = tanh((r - 1/4 - (1+cos 4 theta)/16) / (sqrt(2) eps)).
// Coordinates are shifted to the domain center unless corner_origin is set,
// which evaluates r, theta from the (0,0) corner literally.
Field initial_flower(const Grid& grid, double epsilon, bool corner_origin = false);

// Splitmix64 output stream, one value per call.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

// I.i.d. uniform values in [-amplitude, amplitude], filled row-major from a
// splitmix64 stream.  Reproducible across platforms and thread counts.
Field initial_random(const Grid& grid, std::uint64_t seed, double amplitude);

} // namespace fracpf
