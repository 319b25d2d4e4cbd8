#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "fracpf/models.hpp"
#include "fracpf/stepper.hpp"

namespace fracpf {

enum class InitialKind { flower, uniform_random, file };

struct RunConfig {
    ModelSpec model;
    int nx = 128;
    int ny = 128;
    double lx = 2.0;
    double ly = 2.0;
    double alpha = 1.0;
    double tau = 0.1;
    int n_steps = 100;

    InitialKind initial = InitialKind::flower;
    std::uint64_t seed = 0;
    double amplitude = 1.0;
    std::string initial_file;

    std::string out_dir = "out";
    int energy_stride = 1;
    int snapshot_stride = 0;
    std::uint64_t memory_cap_bytes = 8ull << 30;

    bool corner_origin = false;
    double nonlinear_tol = 1e-10;
    int nonlinear_max_iter = 200;

    void validate() const; // throws ConfigError naming the offending field
};

// Flat `key = value` config file with '#' comments.
RunConfig parse_config_file(const std::string& path);
void apply_config_line(RunConfig& cfg, const std::string& key, const std::string& value);

// Built-in parameter sets: "ac-flower", "ch-random", "mbe-random".
RunConfig preset_config(const std::string& name);

// Full run: builds the initial field, advances n_steps, writes energy.csv,
// snap_<step>.fpf files and manifest.txt under cfg.out_dir.
void execute(const RunConfig& cfg);

} // namespace fracpf
