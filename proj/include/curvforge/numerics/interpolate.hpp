#pragma once

#include "curvforge/numerics/field.hpp"

namespace curvforge::numerics {

/// Tensor-product cubic (4x4 Lagrange) interpolation of nodal values; exact
/// on bicubic polynomials in the lattice coordinates. The point must lie at
/// distance >= 2 * spacing from the boundary (DomainError otherwise). Near the
/// boundary the 4x4 block slides inward until all its nodes are interior.
double interpolate(const ScalarField& field, Complex p);
Complex interpolate(const ComplexField& field, Complex p);

}  // namespace curvforge::numerics
