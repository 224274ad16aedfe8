#include "curvforge/numerics/stencil.hpp"

#include <cmath>

namespace curvforge::numerics {

StencilOperator::StencilOperator(GridPtr grid, StencilCoefficients coefficients)
    : grid_(std::move(grid)), coefficients_(std::move(coefficients)) {
    const std::size_t n = grid_->size();
    if (coefficients_.off.size() != n || coefficients_.center.size() != n) {
        throw ConfigError("stencil coefficient count does not match the grid");
    }
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(5 * n);
    row_scale_.resize(n);
    const double h2 = grid_->spacing() * grid_->spacing();
    for (std::size_t k = 0; k < n; ++k) {
        const auto row = static_cast<int>(k);
        triplets.emplace_back(row, row, coefficients_.center[k]);
        const NodeStencil& st = grid_->stencil(k);
        for (int d = 0; d < 4; ++d) {
            if (st.neighbor[d] >= 0 && coefficients_.off[k][d] != 0.0) {
                triplets.emplace_back(row, st.neighbor[d], coefficients_.off[k][d]);
            }
        }
        row_scale_[k] = std::max(1.0, std::abs(coefficients_.center[k]) * h2 / 4.0);
    }
    matrix_.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    matrix_.setFromTriplets(triplets.begin(), triplets.end());
    matrix_.makeCompressed();
}

std::vector<double> StencilOperator::boundary_term(const BoundarySamples& boundary) const {
    std::vector<double> out(grid_->size(), 0.0);
    for (std::size_t k = 0; k < out.size(); ++k) {
        const NodeStencil& st = grid_->stencil(k);
        for (int d = 0; d < 4; ++d) {
            if (st.neighbor[d] < 0) out[k] += coefficients_.off[k][d] * boundary.at(k, d);
        }
    }
    return out;
}

void StencilOperator::apply(std::span<const double> u, const BoundarySamples& boundary,
                            std::span<double> out) const {
    kernels::parallel::apply_stencil(*grid_, coefficients_, u, boundary, out);
}

ScalarField StencilOperator::apply(const ScalarField& u, const BoundaryFunction& boundary) const {
    ScalarField out(grid_);
    apply(u.values(), sample_boundary(*grid_, boundary), out.values());
    return out;
}

namespace {

// Per-axis leg pairs: (plus, minus) = (East, West) or (North, South).
constexpr int kPlus[2] = {East, North};
constexpr int kMinus[2] = {West, South};

StencilCoefficients empty_coefficients(std::size_t n) {
    StencilCoefficients c;
    c.off.assign(n, {0.0, 0.0, 0.0, 0.0});
    c.center.assign(n, 0.0);
    return c;
}

StencilCoefficients gradient_coefficients(const DomainGrid& grid, int axis) {
    StencilCoefficients c = empty_coefficients(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const NodeStencil& st = grid.stencil(k);
        const double a = st.leg[kPlus[axis]];
        const double b = st.leg[kMinus[axis]];
        c.off[k][kPlus[axis]] = b / (a * (a + b));
        c.off[k][kMinus[axis]] = -a / (b * (a + b));
        c.center[k] = (a - b) / (a * b);
    }
    return c;
}

}  // namespace

StencilOperator laplacian_matrix(GridPtr grid) {
    StencilCoefficients c = empty_coefficients(grid->size());
    for (std::size_t k = 0; k < grid->size(); ++k) {
        const NodeStencil& st = grid->stencil(k);
        for (int axis = 0; axis < 2; ++axis) {
            const double a = st.leg[kPlus[axis]];
            const double b = st.leg[kMinus[axis]];
            const double cp = 2.0 / (a * (a + b));
            const double cm = 2.0 / (b * (a + b));
            c.off[k][kPlus[axis]] = cp;
            c.off[k][kMinus[axis]] = cm;
            c.center[k] -= cp + cm;
        }
    }
    return StencilOperator(std::move(grid), std::move(c));
}

StencilOperator gradient_x_operator(GridPtr grid) {
    auto c = gradient_coefficients(*grid, 0);
    return StencilOperator(std::move(grid), std::move(c));
}

StencilOperator gradient_y_operator(GridPtr grid) {
    auto c = gradient_coefficients(*grid, 1);
    return StencilOperator(std::move(grid), std::move(c));
}

}  // namespace curvforge::numerics
