#include "curvforge/numerics/kernels.hpp"

#include <cmath>

#include <omp.h>

namespace curvforge::numerics {

namespace {

inline double stencil_at(const DomainGrid& grid, const StencilCoefficients& s, std::span<const double> u,
                         const BoundarySamples& boundary, std::size_t k) {
    const NodeStencil& st = grid.stencil(k);
    double acc = s.center[k] * u[k];
    for (int d = 0; d < 4; ++d) {
        const int nb = st.neighbor[d];
        const double v = nb >= 0 ? u[static_cast<std::size_t>(nb)] : boundary.values[4 * k + d];
        acc += s.off[k][d] * v;
    }
    return acc;
}

// Integral of log|zeta| over the square [-a, a]^2.
inline double square_log_integral(double a) {
    return 4.0 * a * a * (std::log(std::sqrt(2.0) * a) - 1.5 + kPi / 4.0);
}

inline double green_at(const DomainGrid& grid, std::span<const double> density, std::size_t t) {
    const double h = grid.spacing();
    const double cell = h * h;
    const Complex z = grid.node(t);
    const auto nodes = grid.nodes();
    double sum = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (k == t || density[k] == 0.0) continue;
        const Complex zeta = nodes[k];
        const double num = std::norm(1.0 - z * std::conj(zeta));
        const double den = std::norm(z - zeta);
        sum += 0.5 * std::log(num / den) * density[k];
    }
    sum *= cell;
    const double host = cell * std::log(1.0 - std::norm(z)) - square_log_integral(0.5 * h);
    sum += host * density[t];
    return -sum / (2.0 * kPi);
}

inline void residual_at(const DomainGrid& grid, const CurvatureResidualInput& in, std::size_t k,
                        std::span<double> residual, std::span<double> lap_w, std::span<double> gx,
                        std::span<double> gy) {
    const double l = stencil_at(grid, *in.laplacian, in.w, *in.boundary_w, k);
    const double x = stencil_at(grid, *in.grad_x, in.w, *in.boundary_w, k);
    const double y = stencil_at(grid, *in.grad_y, in.w, *in.boundary_w, k);
    lap_w[k] = l;
    gx[k] = x;
    gy[k] = y;
    residual[k] = in.w[k] * l - x * x - y * y + 4.0 * in.weight[k];
}

}  // namespace

namespace kernels::serial {

void apply_stencil(const DomainGrid& grid, const StencilCoefficients& s, std::span<const double> u,
                   const BoundarySamples& boundary, std::span<double> out) {
    for (std::size_t k = 0; k < grid.size(); ++k) out[k] = stencil_at(grid, s, u, boundary, k);
}

void green_potential(const DomainGrid& grid, std::span<const double> density,
                     std::span<const std::size_t> targets, std::span<double> out) {
    for (std::size_t i = 0; i < targets.size(); ++i) out[i] = green_at(grid, density, targets[i]);
}

void curvature_residual(const DomainGrid& grid, const CurvatureResidualInput& in, std::span<double> residual,
                        std::span<double> lap_w, std::span<double> gx, std::span<double> gy) {
    for (std::size_t k = 0; k < grid.size(); ++k) residual_at(grid, in, k, residual, lap_w, gx, gy);
}

}  // namespace kernels::serial

namespace kernels::parallel {

void apply_stencil(const DomainGrid& grid, const StencilCoefficients& s, std::span<const double> u,
                   const BoundarySamples& boundary, std::span<double> out) {
    const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        out[static_cast<std::size_t>(k)] = stencil_at(grid, s, u, boundary, static_cast<std::size_t>(k));
    }
}

void green_potential(const DomainGrid& grid, std::span<const double> density,
                     std::span<const std::size_t> targets, std::span<double> out) {
    const auto n = static_cast<std::ptrdiff_t>(targets.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        out[u] = green_at(grid, density, targets[u]);
    }
}

void curvature_residual(const DomainGrid& grid, const CurvatureResidualInput& in, std::span<double> residual,
                        std::span<double> lap_w, std::span<double> gx, std::span<double> gy) {
    const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        residual_at(grid, in, static_cast<std::size_t>(k), residual, lap_w, gx, gy);
    }
}

}  // namespace kernels::parallel

namespace {
int g_thread_cap = 0;
}

void set_thread_cap(int threads) {
    g_thread_cap = threads > 0 ? threads : 0;
    if (g_thread_cap > 0) omp_set_num_threads(g_thread_cap);
}

int thread_cap() { return g_thread_cap; }

}  // namespace curvforge::numerics
