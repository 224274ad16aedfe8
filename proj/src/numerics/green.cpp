#include "curvforge/numerics/green.hpp"

#include <numeric>

#include "curvforge/numerics/kernels.hpp"

namespace curvforge::numerics {

std::vector<double> green_quadrature_at(const ScalarField& density, std::span<const std::size_t> targets) {
    const DomainGrid& grid = density.grid();
    if (grid.descriptor().kind() != DomainKind::UnitDisk) {
        throw DomainError("green_quadrature supports only the unit disk (closed-form Green's function), got " +
                          grid.descriptor().name());
    }
    for (std::size_t t : targets) {
        if (t >= grid.size()) throw ConfigError("green_quadrature target index out of range");
    }
    std::vector<double> out(targets.size());
    kernels::parallel::green_potential(grid, density.values(), targets, out);
    return out;
}

ScalarField green_quadrature(const ScalarField& density) {
    std::vector<std::size_t> all(density.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return ScalarField(density.grid_ptr(), green_quadrature_at(density, all));
}

}  // namespace curvforge::numerics
