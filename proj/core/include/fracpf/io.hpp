#pragma once

#include <string>

#include "fracpf/stepper.hpp"

namespace fracpf {

struct Snapshot {
    int nx = 0;
    int ny = 0;
    double time = 0.0;
    double alpha = 0.0;
    std::vector<double> values; // row-major
};

// Binary snapshot format: magic "FPF1", u32 LE nx, ny, f64 LE time, alpha,
// then nx*ny f64 LE values row-major.
void write_snapshot(const std::string& path, const Field& f, double time, double alpha);
Snapshot read_snapshot(const std::string& path);

// energy.csv: header step,time,energy,grad_part,bulk_part,mass,max_abs and
// one full-precision row per recorded sample.
void write_energy_csv(const std::string& path, const SeriesReport& report);

struct EnergyCsv {
    std::vector<double> steps, times, energy, grad_part, bulk_part, mass, max_abs;
};
EnergyCsv read_energy_csv(const std::string& path);

} // namespace fracpf
