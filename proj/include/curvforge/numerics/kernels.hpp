#pragma once

// Data-parallel inner loops. Each kernel exists twice: an OpenMP version
// used by the library and a plain serial loop kept as the reference the
// tests and the benchmark compare against. Every output element is computed
// independently in the same order, so both versions are bit-identical.

#include <array>
#include <span>
#include <vector>

#include "curvforge/numerics/domain.hpp"

namespace curvforge::numerics {

/// Linear five-point stencil: (S u)_k = center_k u_k + sum_d off_{k,d} u_{nbr(k,d)},
/// where a cut leg reads the boundary sample instead of a neighbor.
struct StencilCoefficients {
    std::vector<std::array<double, 4>> off;
    std::vector<double> center;
};

/// Reciprocal-density curvature residual inputs (see curvature solver).
struct CurvatureResidualInput {
    std::span<const double> w;
    std::span<const double> weight;  // |h|^2 per node
    const StencilCoefficients* laplacian = nullptr;
    const StencilCoefficients* grad_x = nullptr;
    const StencilCoefficients* grad_y = nullptr;
    const BoundarySamples* boundary_w = nullptr;
};

namespace kernels::serial {

void apply_stencil(const DomainGrid& grid, const StencilCoefficients& s, std::span<const double> u,
                   const BoundarySamples& boundary, std::span<double> out);

/// out[t] = -(1/2pi) * sum_k g_D(z_t, zeta_k) density_k * cell, host cell integrated exactly.
void green_potential(const DomainGrid& grid, std::span<const double> density,
                     std::span<const std::size_t> targets, std::span<double> out);

/// G_k = w_k (L w)_k - (Dx w)_k^2 - (Dy w)_k^2 + 4 |h_k|^2; also returns L w, Dx w, Dy w.
void curvature_residual(const DomainGrid& grid, const CurvatureResidualInput& in, std::span<double> residual,
                        std::span<double> lap_w, std::span<double> gx, std::span<double> gy);

}  // namespace kernels::serial

namespace kernels::parallel {

void apply_stencil(const DomainGrid& grid, const StencilCoefficients& s, std::span<const double> u,
                   const BoundarySamples& boundary, std::span<double> out);

void green_potential(const DomainGrid& grid, std::span<const double> density,
                     std::span<const std::size_t> targets, std::span<double> out);

void curvature_residual(const DomainGrid& grid, const CurvatureResidualInput& in, std::span<double> residual,
                        std::span<double> lap_w, std::span<double> gx, std::span<double> gy);

}  // namespace kernels::parallel

/// Caps OpenMP threads used by the parallel kernels (0 keeps the runtime default).
void set_thread_cap(int threads);
int thread_cap();

}  // namespace curvforge::numerics
