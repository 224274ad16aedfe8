#include "curvforge/numerics/linear_solve.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>

namespace curvforge::numerics {

namespace {

using Vector = Eigen::VectorXd;

double inf_norm(const Vector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

std::vector<double> solve_sparse(const SparseMatrix& a, std::span<const double> b,
                                 std::span<const double> row_scale, int resolution,
                                 const LinearSolveOptions& options, LinearSolveStats* stats) {
    const auto n = a.rows();
    if (a.cols() != n || static_cast<Eigen::Index>(b.size()) != n ||
        static_cast<Eigen::Index>(row_scale.size()) != n) {
        throw ConfigError("linear system dimensions do not match");
    }
    Vector inv_scale(n);
    for (Eigen::Index i = 0; i < n; ++i) inv_scale[i] = 1.0 / row_scale[static_cast<std::size_t>(i)];
    const SparseMatrix as = inv_scale.asDiagonal() * a;
    const Vector bs = inv_scale.cwiseProduct(Eigen::Map<const Vector>(b.data(), n));
    const double target = options.tolerance * (1.0 + inf_norm(bs));

    LinearSolveStats local;
    Vector x = Vector::Zero(n);
    double res = inf_norm(bs);

    if (resolution <= options.direct_max_resolution) {
        local.direct = true;
        Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
        lu.compute(as);
        if (lu.info() != Eigen::Success) {
            throw SolverError("sparse LU factorization failed (singular operator?)", 0, res);
        }
        Vector r = bs;
        for (int step = 0; step <= options.refinement_steps && res > target; ++step) {
            x += lu.solve(r);
            r = bs - as * x;
            res = inf_norm(r);
            local.iterations = step + 1;
        }
    } else {
        const Eigen::SparseMatrix<double, Eigen::RowMajor> rm = as;
        Eigen::BiCGSTAB<Eigen::SparseMatrix<double, Eigen::RowMajor>, Eigen::DiagonalPreconditioner<double>>
            solver;
        solver.setTolerance(1e-14);
        solver.setMaxIterations(options.max_iterations);
        solver.compute(rm);
        Vector r = bs;
        for (int restart = 0; restart <= options.refinement_steps && res > target; ++restart) {
            const Vector dx = solver.solve(r);
            local.iterations += static_cast<int>(solver.iterations());
            if (!dx.allFinite()) break;
            x += dx;
            r = bs - rm * x;
            res = inf_norm(r);
        }
    }
    local.residual = res;
    if (stats) *stats = local;
    if (!(res <= target)) {
        std::ostringstream os;
        os << (local.direct ? "direct" : "BiCGSTAB") << " solve stopped at scaled residual " << res
           << " (target " << target << ") after " << local.iterations << " iterations";
        throw SolverError(os.str(), local.iterations, res);
    }
    return {x.data(), x.data() + n};
}

namespace {

using Lu = Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>>;

// Applies stored LU factors as the preconditioner of an Eigen Krylov solver.
class LuPreconditioner {
public:
    using StorageIndex = int;
    enum { ColsAtCompileTime = Eigen::Dynamic, MaxColsAtCompileTime = Eigen::Dynamic };

    LuPreconditioner() = default;
    template <typename M>
    LuPreconditioner& analyzePattern(const M&) { return *this; }
    template <typename M>
    LuPreconditioner& factorize(const M&) { return *this; }
    template <typename M>
    LuPreconditioner& compute(const M&) { return *this; }
    template <typename Rhs>
    Vector solve(const Rhs& b) const { return lu->solve(Vector(b)); }
    Eigen::ComputationInfo info() const { return Eigen::Success; }

    const Lu* lu = nullptr;
};

}  // namespace

struct LaggedLuSolver::Impl {
    int resolution;
    Vector inv_scale;
    LinearSolveOptions options;
    int budget;
    std::unique_ptr<Lu> lu;
    int factorizations = 0;
};

LaggedLuSolver::LaggedLuSolver(int resolution, std::vector<double> row_scale, LinearSolveOptions options,
                               int krylov_budget)
    : impl_(std::make_unique<Impl>()) {
    impl_->resolution = resolution;
    impl_->inv_scale.resize(static_cast<Eigen::Index>(row_scale.size()));
    for (std::size_t i = 0; i < row_scale.size(); ++i) impl_->inv_scale[static_cast<Eigen::Index>(i)] = 1.0 / row_scale[i];
    impl_->options = options;
    impl_->budget = krylov_budget;
}

LaggedLuSolver::~LaggedLuSolver() = default;
LaggedLuSolver::LaggedLuSolver(LaggedLuSolver&&) noexcept = default;
LaggedLuSolver& LaggedLuSolver::operator=(LaggedLuSolver&&) noexcept = default;

int LaggedLuSolver::factorizations() const noexcept { return impl_->factorizations; }

std::vector<double> LaggedLuSolver::solve(const SparseMatrix& a, std::span<const double> b, LinearSolveStats* stats) {
    Impl& m = *impl_;
    const auto n = a.rows();
    if (m.resolution > m.options.direct_max_resolution) {
        std::vector<double> scale(static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i) scale[static_cast<std::size_t>(i)] = 1.0 / m.inv_scale[i];
        return solve_sparse(a, b, scale, m.resolution, m.options, stats);
    }
    if (a.cols() != n || static_cast<Eigen::Index>(b.size()) != n || m.inv_scale.size() != n) {
        throw ConfigError("linear system dimensions do not match");
    }
    const SparseMatrix as = m.inv_scale.asDiagonal() * a;
    const Vector bs = m.inv_scale.cwiseProduct(Eigen::Map<const Vector>(b.data(), n));
    const double target = m.options.tolerance * (1.0 + inf_norm(bs));
    LinearSolveStats local;
    local.direct = true;

    if (m.lu) {
        Eigen::BiCGSTAB<SparseMatrix, LuPreconditioner> krylov;
        krylov.compute(as);
        krylov.preconditioner().lu = m.lu.get();
        krylov.setMaxIterations(m.budget);
        krylov.setTolerance(1e-14);
        Vector x = krylov.solveWithGuess(bs, Vector::Zero(n));
        local.iterations = static_cast<int>(krylov.iterations());
        if (x.allFinite()) {
            const double res = inf_norm(bs - as * x);
            if (res <= target) {
                local.residual = res;
                if (stats) *stats = local;
                return {x.data(), x.data() + n};
            }
        }
    }

    auto lu = std::make_unique<Lu>();
    lu->compute(as);
    ++m.factorizations;
    if (lu->info() != Eigen::Success) {
        throw SolverError("sparse LU factorization failed (singular operator?)", 0, inf_norm(bs));
    }
    Vector x = Vector::Zero(n);
    Vector r = bs;
    double res = inf_norm(bs);
    for (int step = 0; step <= m.options.refinement_steps && res > target; ++step) {
        x += lu->solve(r);
        r = bs - as * x;
        res = inf_norm(r);
        local.iterations = step + 1;
    }
    m.lu = std::move(lu);
    local.residual = res;
    if (stats) *stats = local;
    if (!(res <= target)) {
        std::ostringstream os;
        os << "direct solve stopped at scaled residual " << res << " (target " << target << ")";
        throw SolverError(os.str(), local.iterations, res);
    }
    return {x.data(), x.data() + n};
}

ScalarField solve_linear(const StencilOperator& op, std::span<const double> shift, const ScalarField& rhs,
                         const BoundaryFunction& boundary, const LinearSolveOptions& options,
                         LinearSolveStats* stats) {
    const DomainGrid& grid = op.grid();
    const std::size_t n = grid.size();
    if (rhs.size() != n || (!shift.empty() && shift.size() != n)) {
        throw ConfigError("solve_linear: field sizes do not match the operator");
    }
    SparseMatrix a = op.matrix();
    if (!shift.empty()) {
        for (std::size_t k = 0; k < n; ++k) {
            if (shift[k] < 0.0) throw ConfigError("solve_linear: diagonal shift must be nonnegative");
            a.coeffRef(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) -= shift[k];
        }
    }
    const std::vector<double> bterm = op.boundary_term(sample_boundary(grid, boundary));
    std::vector<double> b(n);
    for (std::size_t k = 0; k < n; ++k) b[k] = rhs[k] - bterm[k];
    auto x = solve_sparse(a, b, op.row_scale(), grid.resolution(), options, stats);
    return ScalarField(op.grid_ptr(), std::move(x));
}

ScalarField harmonic_extension(const StencilOperator& laplacian, const BoundaryFunction& boundary,
                               const LinearSolveOptions& options) {
    const ScalarField zero(laplacian.grid_ptr(), 0.0);
    return solve_linear(laplacian, {}, zero, boundary, options);
}

ScalarField harmonic_extension(GridPtr grid, const BoundaryFunction& boundary, const LinearSolveOptions& options) {
    return harmonic_extension(laplacian_matrix(std::move(grid)), boundary, options);
}

}  // namespace curvforge::numerics
