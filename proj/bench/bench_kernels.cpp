// Serial reference vs OpenMP kernels on the unit disk. Run with
// CURVFORGE_THREADS unset to use every core.

#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "curvforge/numerics/kernels.hpp"
#include "curvforge/numerics/stencil.hpp"

using namespace curvforge;
using namespace curvforge::numerics;

namespace {

struct Fixture {
    GridPtr grid;
    StencilOperator lap, gx, gy;
    ScalarField w;
    BoundarySamples boundary;
    std::vector<double> weight;

    explicit Fixture(int resolution)
        : grid(build_grid(DomainDescriptor::unit_disk(), resolution)),
          lap(laplacian_matrix(grid)),
          gx(gradient_x_operator(grid)),
          gy(gradient_y_operator(grid)),
          w(ScalarField::sample(grid, f)),
          boundary(sample_boundary(*grid, f)),
          weight(grid->size(), 0.25) {}

    static double f(Complex z) { return 1.0 - 0.5 * std::norm(z) + 0.1 * z.real(); }
};

Fixture& fixture(int resolution) {
    static std::vector<std::pair<int, Fixture*>> cache;
    for (auto& [r, p] : cache) {
        if (r == resolution) return *p;
    }
    cache.emplace_back(resolution, new Fixture(resolution));
    return *cache.back().second;
}

template <bool Parallel>
void BM_apply_stencil(benchmark::State& state) {
    auto& fx = fixture(static_cast<int>(state.range(0)));
    std::vector<double> out(fx.grid->size());
    for (auto _ : state) {
        if constexpr (Parallel) {
            kernels::parallel::apply_stencil(*fx.grid, fx.lap.coefficients(), fx.w.values(), fx.boundary, out);
        } else {
            kernels::serial::apply_stencil(*fx.grid, fx.lap.coefficients(), fx.w.values(), fx.boundary, out);
        }
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(fx.grid->size()));
}

template <bool Parallel>
void BM_curvature_residual(benchmark::State& state) {
    auto& fx = fixture(static_cast<int>(state.range(0)));
    const std::size_t n = fx.grid->size();
    std::vector<double> r(n), l(n), x(n), y(n);
    CurvatureResidualInput in{fx.w.values(), fx.weight, &fx.lap.coefficients(), &fx.gx.coefficients(),
                              &fx.gy.coefficients(), &fx.boundary};
    for (auto _ : state) {
        if constexpr (Parallel) {
            kernels::parallel::curvature_residual(*fx.grid, in, r, l, x, y);
        } else {
            kernels::serial::curvature_residual(*fx.grid, in, r, l, x, y);
        }
        benchmark::DoNotOptimize(r.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}

// All-pairs Green quadrature onto 256 targets: the expensive kernel.
template <bool Parallel>
void BM_green_potential(benchmark::State& state) {
    auto& fx = fixture(static_cast<int>(state.range(0)));
    std::vector<std::size_t> targets(256);
    for (std::size_t i = 0; i < targets.size(); ++i) targets[i] = i * (fx.grid->size() / targets.size());
    std::vector<double> out(targets.size());
    for (auto _ : state) {
        if constexpr (Parallel) {
            kernels::parallel::green_potential(*fx.grid, fx.w.values(), targets, out);
        } else {
            kernels::serial::green_potential(*fx.grid, fx.w.values(), targets, out);
        }
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(targets.size() * fx.grid->size()));
}

}  // namespace

BENCHMARK(BM_apply_stencil<false>)->Name("apply_stencil/serial")->Arg(257)->Arg(513);
BENCHMARK(BM_apply_stencil<true>)->Name("apply_stencil/openmp")->Arg(257)->Arg(513);
BENCHMARK(BM_curvature_residual<false>)->Name("curvature_residual/serial")->Arg(257)->Arg(513);
BENCHMARK(BM_curvature_residual<true>)->Name("curvature_residual/openmp")->Arg(257)->Arg(513);
BENCHMARK(BM_green_potential<false>)->Name("green_potential/serial")->Arg(129)->Arg(257);
BENCHMARK(BM_green_potential<true>)->Name("green_potential/openmp")->Arg(129)->Arg(257);

BENCHMARK_MAIN();
