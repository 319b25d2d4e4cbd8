#include "fracpf/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace fracpf {

namespace {

constexpr char kMagic[4] = {'F', 'P', 'F', '1'};

template <typename T>
void write_le(std::ofstream& os, T v) {
    // host assumed little-endian (asserted at build time for the usual targets)
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_le(std::ifstream& is) {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}

} // namespace

void write_snapshot(const std::string& path, const Field& f, double time, double alpha) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open snapshot file for writing: " + path);
    os.write(kMagic, 4);
    write_le<std::uint32_t>(os, static_cast<std::uint32_t>(f.grid.nx));
    write_le<std::uint32_t>(os, static_cast<std::uint32_t>(f.grid.ny));
    write_le<double>(os, time);
    write_le<double>(os, alpha);
    os.write(reinterpret_cast<const char*>(f.v.data()),
             static_cast<std::streamsize>(f.v.size() * sizeof(double)));
    if (!os) throw std::runtime_error("short write on snapshot file: " + path);
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open snapshot file: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("bad snapshot magic in " + path);
    Snapshot s;
    s.nx = static_cast<int>(read_le<std::uint32_t>(is));
    s.ny = static_cast<int>(read_le<std::uint32_t>(is));
    s.time = read_le<double>(is);
    s.alpha = read_le<double>(is);
    s.values.resize(static_cast<std::size_t>(s.nx) * s.ny);
    is.read(reinterpret_cast<char*>(s.values.data()),
            static_cast<std::streamsize>(s.values.size() * sizeof(double)));
    if (!is) throw std::runtime_error("truncated snapshot file: " + path);
    return s;
}

void write_energy_csv(const std::string& path, const SeriesReport& report) {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (!fp) throw std::runtime_error("cannot open csv for writing: " + path);
    std::fputs("step,time,energy,grad_part,bulk_part,mass,max_abs\n", fp);
    for (std::size_t i = 0; i < report.times.size(); ++i) {
        std::fprintf(fp, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                     static_cast<int>(report.steps[i]), report.times[i], report.energy[i].total,
                     report.energy[i].gradient_part, report.energy[i].bulk_part, report.mass[i],
                     report.max_abs[i]);
    }
    std::fclose(fp);
}

EnergyCsv read_energy_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open csv: " + path);
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("empty csv: " + path);
    EnergyCsv csv;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        double v[7];
        char comma;
        for (int i = 0; i < 7; ++i) {
            if (!(ss >> v[i])) throw std::runtime_error("malformed csv row in " + path);
            if (i < 6) ss >> comma;
        }
        csv.steps.push_back(v[0]);
        csv.times.push_back(v[1]);
        csv.energy.push_back(v[2]);
        csv.grad_part.push_back(v[3]);
        csv.bulk_part.push_back(v[4]);
        csv.mass.push_back(v[5]);
        csv.max_abs.push_back(v[6]);
    }
    return csv;
}

} // namespace fracpf
