#pragma once

#include <span>
#include <vector>

#include <Eigen/SparseCore>

#include "curvforge/numerics/field.hpp"
#include "curvforge/numerics/kernels.hpp"

namespace curvforge::numerics {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// A five-point operator on a grid. Legs cut by the boundary read Dirichlet
/// samples, so S u = M u + boundary_term(g) with M the interior matrix.
class StencilOperator {
public:
    StencilOperator(GridPtr grid, StencilCoefficients coefficients);

    const GridPtr& grid_ptr() const noexcept { return grid_; }
    const DomainGrid& grid() const { return *grid_; }
    const StencilCoefficients& coefficients() const noexcept { return coefficients_; }

    /// Interior part as a sparse matrix (column-major, sorted indices).
    const SparseMatrix& matrix() const noexcept { return matrix_; }

    /// Contribution of the cut legs: sum over cut d of off_{k,d} g_{k,d}.
    std::vector<double> boundary_term(const BoundarySamples& boundary) const;

    void apply(std::span<const double> u, const BoundarySamples& boundary, std::span<double> out) const;
    ScalarField apply(const ScalarField& u, const BoundaryFunction& boundary) const;

    /// Row scale max(1, |center_k| h^2 / 4); divides out the growth from short cut legs.
    const std::vector<double>& row_scale() const noexcept { return row_scale_; }

private:
    GridPtr grid_;
    StencilCoefficients coefficients_;
    SparseMatrix matrix_;
    std::vector<double> row_scale_;
};

/// Shortley–Weller Laplacian; the ordinary 5-point stencil at regular nodes.
StencilOperator laplacian_matrix(GridPtr grid);

/// Three-point first derivatives on the possibly unequal legs (second order
/// at regular nodes, first order at cut nodes).
StencilOperator gradient_x_operator(GridPtr grid);
StencilOperator gradient_y_operator(GridPtr grid);

}  // namespace curvforge::numerics
