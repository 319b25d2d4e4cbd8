#include "fracpf/spectral.hpp"

#include <fftw3.h>

#include <atomic>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>

namespace fracpf {

namespace {

std::atomic<std::uint64_t> g_fwd_count{0};
std::atomic<std::uint64_t> g_inv_count{0};

// One plan pair per grid size, with owned fftw-aligned buffers.  The FFTW
// planner is not thread safe, so creation is serialized; execution copies
// in/out of the owned buffers and is guarded by the per-plan mutex.
struct PlanPair {
    int nx, ny;
    double* real;
    fftw_complex* cplx;
    fftw_plan fwd;
    fftw_plan inv;
    std::mutex exec_mutex;

    PlanPair(int nx_, int ny_) : nx(nx_), ny(ny_) {
        std::size_t nr = static_cast<std::size_t>(nx) * ny;
        std::size_t nc = static_cast<std::size_t>(nx) * (ny / 2 + 1);
        real = fftw_alloc_real(nr);
        cplx = fftw_alloc_complex(nc);
        fwd = fftw_plan_dft_r2c_2d(nx, ny, real, cplx, FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_2d(nx, ny, cplx, real, FFTW_ESTIMATE);
    }
    ~PlanPair() {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(inv);
        fftw_free(real);
        fftw_free(cplx);
    }
};

PlanPair& plans_for(int nx, int ny) {
    static std::mutex map_mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<PlanPair>> cache;
    std::lock_guard<std::mutex> lk(map_mutex);
    auto& p = cache[{nx, ny}];
    if (!p) p = std::make_unique<PlanPair>(nx, ny);
    return *p;
}

} // namespace

SpectralField forward_transform(const Field& f) {
    SpectralField out(f.grid);
    PlanPair& pp = plans_for(f.grid.nx, f.grid.ny);
    std::lock_guard<std::mutex> lk(pp.exec_mutex);
    std::memcpy(pp.real, f.v.data(), f.v.size() * sizeof(double));
    fftw_execute(pp.fwd);
    std::memcpy(out.c.data(), pp.cplx, out.c.size() * sizeof(fftw_complex));
    g_fwd_count.fetch_add(1, std::memory_order_relaxed);
    return out;
}

Field inverse_transform(const SpectralField& F) {
    Field out(F.grid);
    PlanPair& pp = plans_for(F.grid.nx, F.grid.ny);
    {
        std::lock_guard<std::mutex> lk(pp.exec_mutex);
        std::memcpy(pp.cplx, F.c.data(), F.c.size() * sizeof(fftw_complex));
        fftw_execute(pp.inv);
        std::memcpy(out.v.data(), pp.real, out.v.size() * sizeof(double));
    }
    const double scale = 1.0 / (static_cast<double>(F.grid.nx) * F.grid.ny);
    for (double& x : out.v) x *= scale;
    g_inv_count.fetch_add(1, std::memory_order_relaxed);
    return out;
}

namespace {

// symbol of (a - b*Lap + c*Lap^2) at |k|^2 = k2
inline double helmholtz_symbol(double a, double b, double c, double k2) {
    return a + b * k2 + c * k2 * k2;
}

} // namespace

Field apply_operator(const Field& f, DiffOp op) {
    const Grid& g = f.grid;
    SpectralField F = forward_transform(f);
    const int ncq = g.ny / 2 + 1;
    switch (op) {
    case DiffOp::laplacian:
    case DiffOp::bilaplacian:
        for (int p = 0; p < g.nx; ++p) {
            double kx = g.kx(p);
            for (int q = 0; q < ncq; ++q) {
                double ky = g.ky(q);
                double k2 = kx * kx + ky * ky;
                F(p, q) *= (op == DiffOp::laplacian) ? -k2 : k2 * k2;
            }
        }
        return inverse_transform(F);
    default:
        throw DomainError("apply_operator: use gradient()/divergence() for vector operators");
    }
}

void gradient(const Field& f, Field& gx, Field& gy) {
    const Grid& g = f.grid;
    SpectralField F = forward_transform(f);
    SpectralField Fx(g), Fy(g);
    const int ncq = g.ny / 2 + 1;
    const std::complex<double> I(0.0, 1.0);
    for (int p = 0; p < g.nx; ++p) {
        // Nyquist mode of odd-order derivatives carries no sign information;
        // zero it to keep the result real and symmetric.
        double kx = (p == g.nx / 2) ? 0.0 : g.kx(p);
        for (int q = 0; q < ncq; ++q) {
            double ky = (q == g.ny / 2) ? 0.0 : g.ky(q);
            Fx(p, q) = I * kx * F(p, q);
            Fy(p, q) = I * ky * F(p, q);
        }
    }
    gx = inverse_transform(Fx);
    gy = inverse_transform(Fy);
}

Field divergence(const Field& vx, const Field& vy) {
    if (!(vx.grid == vy.grid)) throw DomainError("divergence: grid mismatch");
    const Grid& g = vx.grid;
    SpectralField Fx = forward_transform(vx);
    SpectralField Fy = forward_transform(vy);
    const int ncq = g.ny / 2 + 1;
    const std::complex<double> I(0.0, 1.0);
    for (int p = 0; p < g.nx; ++p) {
        double kx = (p == g.nx / 2) ? 0.0 : g.kx(p);
        for (int q = 0; q < ncq; ++q) {
            double ky = (q == g.ny / 2) ? 0.0 : g.ky(q);
            Fx(p, q) = I * kx * Fx(p, q) + I * ky * Fy(p, q);
        }
    }
    return inverse_transform(Fx);
}

void solve_modified_helmholtz_inplace(SpectralField& rhs_hat, double a, double b, double c) {
    const Grid& g = rhs_hat.grid;
    const int ncq = g.ny / 2 + 1;
    for (int p = 0; p < g.nx; ++p) {
        double kx = g.kx(p);
        for (int q = 0; q < ncq; ++q) {
            double ky = g.ky(q);
            double sym = helmholtz_symbol(a, b, c, kx * kx + ky * ky);
            if (std::abs(sym) < 1e-14)
                throw SingularSymbol("solve_modified_helmholtz: near-zero modal symbol");
            rhs_hat(p, q) /= sym;
        }
    }
}

Field solve_modified_helmholtz(const Field& rhs, double a, double b, double c) {
    SpectralField F = forward_transform(rhs);
    solve_modified_helmholtz_inplace(F, a, b, c);
    return inverse_transform(F);
}

double mean(const Field& f) {
    double s = 0.0;
    for (double x : f.v) s += x;
    return s / static_cast<double>(f.v.size());
}

Field dealiased_pointwise(const std::vector<const Field*>& inputs,
                          const std::function<double(const double*)>& fn) {
    if (inputs.empty()) throw DomainError("dealiased_pointwise: no inputs");
    const Grid& g = inputs[0]->grid;
    Grid fine(g.nx * 3 / 2, g.ny * 3 / 2, g.lx, g.ly);
    const int ncq = g.ny / 2 + 1;
    const int fncq = fine.ny / 2 + 1;
    const double scale = static_cast<double>(fine.nx) * fine.ny / (static_cast<double>(g.nx) * g.ny);

    std::vector<Field> up;
    up.reserve(inputs.size());
    for (const Field* f : inputs) {
        if (!(f->grid == g)) throw DomainError("dealiased_pointwise: grid mismatch");
        SpectralField F = forward_transform(*f);
        SpectralField Ff(fine);
        for (int p = 0; p < g.nx; ++p) {
            int fp = (p <= g.nx / 2) ? p : p + (fine.nx - g.nx);
            for (int q = 0; q < ncq; ++q) Ff(fp, q) = F(p, q) * scale;
        }
        up.push_back(inverse_transform(Ff));
    }

    Field res_fine(fine);
    std::vector<double> args(inputs.size());
    for (std::size_t idx = 0; idx < res_fine.v.size(); ++idx) {
        for (std::size_t m = 0; m < up.size(); ++m) args[m] = up[m].v[idx];
        res_fine.v[idx] = fn(args.data());
    }

    SpectralField Rf = forward_transform(res_fine);
    SpectralField R(g);
    for (int p = 0; p < g.nx; ++p) {
        int fp = (p <= g.nx / 2) ? p : p + (fine.nx - g.nx);
        for (int q = 0; q < ncq; ++q) R(p, q) = Rf(fp, q) / scale;
    }
    // The coarse Nyquist ring has no conjugate partner on the fine grid;
    // drop it so the truncation stays real-symmetric.
    for (int q = 0; q < ncq; ++q) R(g.nx / 2, q) = 0.0;
    for (int p = 0; p < g.nx; ++p) R(p, g.ny / 2) = 0.0;
    (void)fncq;
    return inverse_transform(R);
}

std::uint64_t forward_transform_count() { return g_fwd_count.load(); }
std::uint64_t inverse_transform_count() { return g_inv_count.load(); }
void reset_transform_counters() {
    g_fwd_count = 0;
    g_inv_count = 0;
}

} // namespace fracpf
