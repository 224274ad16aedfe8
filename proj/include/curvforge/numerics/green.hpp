#pragma once

#include <span>
#include <vector>

#include "curvforge/numerics/field.hpp"

namespace curvforge::numerics {

/// v(z) = -(1/2pi) * integral of g(z, zeta) density(zeta) over the unit disk,
/// g the disk Green's function. Cellwise midpoint rule; the host cell's
/// logarithm is integrated exactly. Unit-disk grids only (DomainError otherwise).
ScalarField green_quadrature(const ScalarField& density);

/// Same potential evaluated only at the listed node indices.
std::vector<double> green_quadrature_at(const ScalarField& density, std::span<const std::size_t> targets);

}  // namespace curvforge::numerics
