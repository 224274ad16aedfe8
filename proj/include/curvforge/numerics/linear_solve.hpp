#pragma once

#include <memory>
#include <span>
#include <vector>

#include "curvforge/numerics/stencil.hpp"

namespace curvforge::numerics {

struct LinearSolveOptions {
    /// Grids up to this resolution factor directly; larger ones iterate.
    int direct_max_resolution = 257;
    double tolerance = 1e-10;
    int max_iterations = 20000;
    int refinement_steps = 4;
};

struct LinearSolveStats {
    bool direct = false;
    int iterations = 0;
    double residual = 0.0;  // scaled infinity norm, see solve_sparse
};

/// Solves A x = b for a square system assembled on a grid of the given
/// resolution. Rows are divided by `row_scale` before solving and the
/// result satisfies |D^{-1}(A x - b)|_inf <= tol * (1 + |D^{-1} b|_inf).
/// Throws SolverError when that cannot be reached.
std::vector<double> solve_sparse(const SparseMatrix& a, std::span<const double> b,
                                 std::span<const double> row_scale, int resolution,
                                 const LinearSolveOptions& options = {}, LinearSolveStats* stats = nullptr);

/// Solver for a sequence of systems with one sparsity pattern and row
/// scaling (Newton steps). It keeps the LU factors of an earlier matrix and
/// uses them to precondition BiCGSTAB on the current one, refactoring when
/// that misses the target within `krylov_budget` iterations. Grids above
/// direct_max_resolution never factor and use solve_sparse instead.
class LaggedLuSolver {
public:
    LaggedLuSolver(int resolution, std::vector<double> row_scale, LinearSolveOptions options = {},
                   int krylov_budget = 40);
    ~LaggedLuSolver();
    LaggedLuSolver(LaggedLuSolver&&) noexcept;
    LaggedLuSolver& operator=(LaggedLuSolver&&) noexcept;

    std::vector<double> solve(const SparseMatrix& a, std::span<const double> b, LinearSolveStats* stats = nullptr);
    int factorizations() const noexcept;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Solves (L - diag(shift)) v = rhs with v = boundary on cut legs.
ScalarField solve_linear(const StencilOperator& op, std::span<const double> shift, const ScalarField& rhs,
                         const BoundaryFunction& boundary, const LinearSolveOptions& options = {},
                         LinearSolveStats* stats = nullptr);

/// Discrete-harmonic field with the given Dirichlet data.
ScalarField harmonic_extension(GridPtr grid, const BoundaryFunction& boundary,
                               const LinearSolveOptions& options = {});
ScalarField harmonic_extension(const StencilOperator& laplacian, const BoundaryFunction& boundary,
                               const LinearSolveOptions& options = {});

}  // namespace curvforge::numerics
