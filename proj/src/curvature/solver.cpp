#include "curvforge/curvature/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "curvforge/numerics/green.hpp"
#include "curvforge/numerics/kernels.hpp"

namespace curvforge::curvature {

using numerics::BoundarySamples;
using numerics::DomainGrid;
using numerics::StencilOperator;

std::vector<double> log_weight(const DomainGrid& grid, const inner::InnerFunction& h, const ScalarField* log_outer) {
    std::vector<double> lw(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        lw[k] = 2.0 * inner::log_modulus(h, grid.node(k));
        if (log_outer) lw[k] += 2.0 * (*log_outer)[k];
    }
    return lw;
}

std::vector<double> log_weight(const MetricField& m) {
    return log_weight(m.grid(), m.h, m.log_outer ? &*m.log_outer : nullptr);
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Stencil operators of one grid plus a 5-point pattern matrix whose values
// are overwritten in place for every Newton Jacobian.
struct Operators {
    StencilOperator lap;
    StencilOperator dx;
    StencilOperator dy;
    numerics::SparseMatrix jac;
    std::vector<std::array<int, 5>> slot;  // value index of (k, k) and (k, neighbor d); -1 on cut legs
    numerics::LaggedLuSolver linear;

    Operators(const GridPtr& g, const numerics::LinearSolveOptions& opts)
        : lap(numerics::laplacian_matrix(g)),
          dx(numerics::gradient_x_operator(g)),
          dy(numerics::gradient_y_operator(g)),
          linear(g->resolution(), lap.row_scale(), opts) {
        const auto n = static_cast<Eigen::Index>(g->size());
        std::vector<Eigen::Triplet<double>> t;
        t.reserve(static_cast<std::size_t>(5 * n));
        for (std::size_t k = 0; k < g->size(); ++k) {
            const int row = static_cast<int>(k);
            t.emplace_back(row, row, 1.0);
            for (int nb : g->stencil(k).neighbor) {
                if (nb >= 0) t.emplace_back(row, nb, 1.0);
            }
        }
        jac.resize(n, n);
        jac.setFromTriplets(t.begin(), t.end());
        jac.makeCompressed();
        slot.assign(g->size(), {-1, -1, -1, -1, -1});
        for (Eigen::Index col = 0; col < n; ++col) {
            for (auto p = jac.outerIndexPtr()[col]; p < jac.outerIndexPtr()[col + 1]; ++p) {
                const int row = jac.innerIndexPtr()[p];
                const auto& st = g->stencil(static_cast<std::size_t>(row));
                if (row == col) slot[static_cast<std::size_t>(row)][0] = p;
                for (int d = 0; d < 4; ++d) {
                    if (st.neighbor[d] == col) slot[static_cast<std::size_t>(row)][d + 1] = p;
                }
            }
        }
    }

    // Fills jac with diag(a) L + diag(c) + diag(bx) Dx + diag(by) Dy.
    void assemble(std::span<const double> a, std::span<const double> c, std::span<const double> bx,
                  std::span<const double> by) {
        const auto& cl = lap.coefficients();
        const auto& cx = dx.coefficients();
        const auto& cy = dy.coefficients();
        double* v = jac.valuePtr();
        for (std::size_t k = 0; k < slot.size(); ++k) {
            const double ax = bx.empty() ? 0.0 : bx[k];
            const double ay = by.empty() ? 0.0 : by[k];
            v[slot[k][0]] = a[k] * cl.center[k] + c[k] + ax * cx.center[k] + ay * cy.center[k];
            for (int d = 0; d < 4; ++d) {
                if (slot[k][d + 1] >= 0) {
                    v[slot[k][d + 1]] = a[k] * cl.off[k][d] + ax * cx.off[k][d] + ay * cy.off[k][d];
                }
            }
        }
    }
};

struct NewtonResult {
    std::vector<double> w;
    int iterations = 0;
    int damping_events = 0;
    double residual = 0.0;
};

struct CurvatureEval {
    std::vector<double> g, lap, gx, gy;
    double norm = 0.0;   // scaled max norm, the convergence test
    double merit = 0.0;  // scaled sum of squares, the line-search merit
};

void evaluate(const Operators& ops, std::span<const double> w, std::span<const double> weight,
              const BoundarySamples& bw, CurvatureEval& out) {
    const DomainGrid& grid = ops.lap.grid();
    const std::size_t n = grid.size();
    out.g.resize(n);
    out.lap.resize(n);
    out.gx.resize(n);
    out.gy.resize(n);
    numerics::CurvatureResidualInput in{w, weight, &ops.lap.coefficients(), &ops.dx.coefficients(),
                                        &ops.dy.coefficients(), &bw};
    numerics::kernels::parallel::curvature_residual(grid, in, out.g, out.lap, out.gx, out.gy);
    const auto& scale = ops.lap.row_scale();
    double norm = 0.0;
    double merit = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double v = std::abs(out.g[k]) / scale[k];
        if (!(v <= norm)) norm = std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
        merit += v * v;
    }
    out.norm = norm;
    out.merit = std::isfinite(merit) ? merit : std::numeric_limits<double>::infinity();
}

// Newton on G(w) = w L w - (Dx w)^2 - (Dy w)^2 + 4 weight, w = e^{-u}.
NewtonResult newton(Operators& ops, std::span<const double> weight, const BoundarySamples& bw,
                    std::vector<double> w, const DirichletOptions& opt) {
    const DomainGrid& grid = ops.lap.grid();
    const std::size_t n = grid.size();
    NewtonResult res;
    CurvatureEval cur, trial;
    evaluate(ops, w, weight, bw, cur);
    std::vector<double> wn(n);
    for (int it = 0;; ++it) {
        res.iterations = it;
        res.residual = cur.norm;
        if (cur.norm <= opt.tolerance) break;
        if (it >= opt.max_iterations) {
            std::ostringstream os;
            os << "Newton did not converge in " << opt.max_iterations << " iterations (residual " << cur.norm << ")";
            throw SolverError(os.str(), it, cur.norm);
        }
        std::vector<double> rhs(n), bx(n), by(n);
        for (std::size_t k = 0; k < n; ++k) {
            rhs[k] = -cur.g[k];
            bx[k] = -2.0 * cur.gx[k];
            by[k] = -2.0 * cur.gy[k];
        }
        ops.assemble(w, cur.lap, bx, by);
        const auto dw = ops.linear.solve(ops.jac, rhs);

        double t = 1.0;
        int halvings = 0;
        for (;;) {
            bool positive = true;
            for (std::size_t k = 0; k < n; ++k) {
                wn[k] = w[k] + t * dw[k];
                positive = positive && wn[k] > 0.0;
            }
            if (positive) {
                evaluate(ops, wn, weight, bw, trial);
                if (trial.merit < cur.merit) break;
            }
            if (++halvings > opt.max_halvings) {
                std::ostringstream os;
                os << "Newton line search failed after " << opt.max_halvings << " halvings (residual " << cur.norm
                   << ")";
                throw SolverError(os.str(), it, cur.norm);
            }
            t *= 0.5;
        }
        if (halvings > 0) ++res.damping_events;
        w.swap(wn);
        std::swap(cur, trial);
    }
    res.w = std::move(w);
    return res;
}

// Newton on F(u) = L u - 4 weight e^{2u} from a supersolution (the harmonic
// extension). F is convex and monotone, so the iterates decrease to the discrete
// solution without damping. The stopping norm |F| e^{-2u} / s matches the
// curvature-form residual of the w iteration.
NewtonResult newton_u(Operators& ops, std::span<const double> weight, const BoundarySamples& gs,
                      std::vector<double> u, const DirichletOptions& opt) {
    const DomainGrid& grid = ops.lap.grid();
    const std::size_t n = grid.size();
    const auto& scale = ops.lap.row_scale();
    NewtonResult res;
    std::vector<double> lu(n), f(n), shift(n), ones(n, 1.0);
    for (int it = 0;; ++it) {
        numerics::kernels::parallel::apply_stencil(grid, ops.lap.coefficients(), u, gs, lu);
        double norm = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double e = weight[k] * std::exp(2.0 * u[k]);
            f[k] = lu[k] - 4.0 * e;
            shift[k] = 8.0 * e;
            const double v = std::abs(f[k]) * std::exp(-2.0 * u[k]) / scale[k];
            if (!(v <= norm)) norm = std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
        }
        res.iterations = it;
        res.residual = norm;
        if (norm <= opt.tolerance) break;
        if (it >= opt.max_iterations || !std::isfinite(norm)) {
            std::ostringstream os;
            os << "Newton did not converge in " << opt.max_iterations << " iterations (residual " << norm << ")";
            throw SolverError(os.str(), it, norm);
        }
        for (std::size_t k = 0; k < n; ++k) {
            shift[k] = -shift[k];
            f[k] = -f[k];
        }
        ops.assemble(ones, shift, {}, {});
        const auto du = ops.linear.solve(ops.jac, f);
        for (std::size_t k = 0; k < n; ++k) u[k] += du[k];
    }
    res.w = std::move(u);
    return res;
}

std::vector<double> weights_from_log(const std::vector<double>& lw) {
    std::vector<double> out(lw.size());
    for (std::size_t k = 0; k < lw.size(); ++k) out[k] = std::exp(lw[k]);
    return out;
}

void guard_boundary(const BoundarySamples& bs, double limit) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double v : bs.values) {
        if (!std::isnan(v)) mx = std::max(mx, v);
    }
    if (mx > limit) {
        std::ostringstream os;
        os << "boundary data reach " << mx << " > " << limit
           << "; e^{2u} would be badly conditioned. Use smaller boundary data (blow-up goes through the level schedule)";
        throw SolverError(os.str(), 0, mx);
    }
}

void check_h(const inner::InnerFunction& h) {
    (void)h;  // InnerFunction cannot vanish identically by construction.
}

const ScalarField* outer_ptr(const DirichletOptions& o) { return o.log_outer ? &*o.log_outer : nullptr; }

bool in_core(const DomainGrid& g, Complex z) {
    return g.descriptor().distance_to_boundary(z) >= 0.25 * g.descriptor().diameter();
}

std::pair<MetricField, SolveReport> dirichlet_with(Operators& ops, const GridPtr& grid,
                                                   const inner::InnerFunction& h, const BoundaryFunction& boundary,
                                                   const std::vector<double>& weight, const DirichletOptions& opt) {
    const BoundarySamples gs = numerics::sample_boundary(*grid, boundary);
    guard_boundary(gs, opt.max_boundary);
    const BoundarySamples bw = numerics::transform_samples(gs, [](double g) { return std::exp(-g); });

    std::vector<double> w0(grid->size());
    if (opt.warm_start) {
        if (opt.warm_start->size() != grid->size()) throw ConfigError("warm start lives on a different grid");
        for (std::size_t k = 0; k < w0.size(); ++k) w0[k] = std::exp(-(*opt.warm_start)[k]);
    } else if (opt.initial_guess == InitialGuess::HarmonicExtension) {
        const auto hx = numerics::harmonic_extension(ops.lap, boundary, opt.linear);
        for (std::size_t k = 0; k < w0.size(); ++k) w0[k] = std::exp(-hx[k]);
    } else {
        double mn = std::numeric_limits<double>::infinity();
        for (double v : gs.values) {
            if (!std::isnan(v)) mn = std::min(mn, v);
        }
        std::fill(w0.begin(), w0.end(), std::exp(-mn));
    }

    NewtonResult nr;
    bool fallback = opt.formulation == Formulation::Logarithmic;
    std::vector<double> u;
    if (!fallback) {
        try {
            nr = newton(ops, weight, bw, std::move(w0), opt);
            u.resize(nr.w.size());
            for (std::size_t k = 0; k < u.size(); ++k) u[k] = -std::log(nr.w[k]);
        } catch (const SolverError&) {
            // The w iteration can stall where the boundary layer is far below grid scale.
            fallback = true;
        }
    }
    if (fallback) {
        const auto hx = numerics::harmonic_extension(ops.lap, boundary, opt.linear);
        nr = newton_u(ops, weight, gs, {hx.values().begin(), hx.values().end()}, opt);
        u = std::move(nr.w);
    }

    MetricField m{ScalarField(grid, std::move(u)), h, boundary, BoundaryKind::Dirichlet, 0.0, opt.log_outer};
    SolveReport rep;
    rep.newton_iterations = nr.iterations;
    rep.final_residual = nr.residual;
    rep.damping_events = nr.damping_events;
    rep.fallback_solves = fallback && opt.formulation == Formulation::Reciprocal ? 1 : 0;
    rep.formulation = fallback ? Formulation::Logarithmic : Formulation::Reciprocal;
    rep.converged = true;
    return {std::move(m), rep};
}

}  // namespace

std::pair<MetricField, SolveReport> solve_dirichlet(GridPtr grid, const inner::InnerFunction& h,
                                                    const BoundaryFunction& boundary, const DirichletOptions& options) {
    check_h(h);
    Operators ops(grid, options.linear);
    const auto weight = weights_from_log(log_weight(*grid, h, outer_ptr(options)));
    auto result = dirichlet_with(ops, grid, h, boundary, weight, options);
    if (grid->descriptor().kind() == numerics::DomainKind::UnitDisk) {
        result.second.bounds = bounds_margins(result.first, default_bound_tolerance(*grid));
    }
    return result;
}

std::pair<MetricField, SolveReport> solve_blowup(GridPtr grid, const inner::InnerFunction& h,
                                                 const BlowupOptions& options) {
    if (options.schedule.empty()) throw ConfigError("blow-up schedule is empty");
    for (std::size_t i = 1; i < options.schedule.size(); ++i) {
        if (!(options.schedule[i] > options.schedule[i - 1])) throw ConfigError("blow-up schedule must increase");
    }
    if (!(options.stop_tol > 0.0)) throw ConfigError("stop_tol must be positive");
    const double h4 = 4.0 * grid->spacing();
    for (const auto& zero : h.zeros()) {
        const double d = grid->descriptor().distance_to_boundary(zero.z);
        if (d > 0.0 && d < h4) {
            std::ostringstream os;
            os << "zero " << zero.z << " of h lies within 4 grid spacings of the boundary";
            throw ConfigError(os.str());
        }
    }
    const bool disk = grid->descriptor().kind() == numerics::DomainKind::UnitDisk;
    Operators ops(grid, options.dirichlet.linear);
    const auto weight = weights_from_log(log_weight(*grid, h, outer_ptr(options.dirichlet)));

    const double btol = default_bound_tolerance(*grid);
    auto run = [&](Formulation formulation) -> std::optional<std::pair<MetricField, SolveReport>> {
        SolveReport rep;
        rep.formulation = formulation;
        std::optional<MetricField> prev;
        for (double n : options.schedule) {
            DirichletOptions opt = options.dirichlet;
            opt.formulation = formulation;
            if (prev) opt.warm_start = prev->u;
            auto [m, level_rep] = dirichlet_with(ops, grid, h, [n](Complex) { return n; }, weight, opt);
            if (level_rep.fallback_solves > 0) return std::nullopt;
            m.kind = BoundaryKind::Blowup;
            m.level = n;
            LevelRecord rec;
            rec.n = n;
            rec.newton_iterations = level_rep.newton_iterations;
            rec.residual = level_rep.final_residual;
            rec.delta = kNaN;
            if (prev) {
                double delta = 0.0;
                double worst = std::numeric_limits<double>::infinity();
                Complex worst_z{};
                for (std::size_t k = 0; k < grid->size(); ++k) {
                    const double d = m.u[k] - prev->u[k];
                    if (d < worst) {
                        worst = d;
                        worst_z = grid->node(k);
                    }
                    if (in_core(*grid, grid->node(k))) delta = std::max(delta, std::abs(d));
                }
                if (worst < -options.monotonicity_tol) {
                    std::ostringstream os;
                    os << "blow-up levels not monotone: u_" << n << " - u_prev = " << worst << " at " << worst_z;
                    throw VerificationError(os.str(), worst_z, worst);
                }
                rec.delta = delta;
            }
            if (disk) rec.bounds = bounds_margins(m, btol);
            rep.newton_iterations += level_rep.newton_iterations;
            rep.damping_events += level_rep.damping_events;
            rep.final_residual = level_rep.final_residual;
            rep.blowup_levels.push_back(rec);
            prev = std::move(m);
            if (!std::isnan(rec.delta) && rec.delta < options.stop_tol) break;
        }
        rep.converged = true;
        if (disk) rep.bounds = rep.blowup_levels.back().bounds;
        return std::pair<MetricField, SolveReport>{std::move(*prev), rep};
    };

    if (options.dirichlet.formulation == Formulation::Reciprocal) {
        if (auto out = run(Formulation::Reciprocal)) return std::move(*out);
    }
    auto out = run(Formulation::Logarithmic);
    if (options.dirichlet.formulation == Formulation::Reciprocal) out->second.fallback_solves = 1;
    return std::move(*out);
}

ScalarField residual(const MetricField& m) {
    const GridPtr& grid = m.grid_ptr();
    const auto lap = numerics::laplacian_matrix(grid);
    const auto& c = lap.coefficients();
    const auto lw = log_weight(m);
    ScalarField out(grid);
    for (std::size_t k = 0; k < grid->size(); ++k) {
        const auto& st = grid->stencil(k);
        double acc = c.center[k] * m.u[k];
        for (int d = 0; d < 4; ++d) {
            double v;
            if (st.neighbor[d] >= 0) {
                v = m.u[static_cast<std::size_t>(st.neighbor[d])];
            } else {
                v = m.boundary ? m.boundary(st.boundary_point[d]) : kNaN;
                if (!std::isfinite(v)) v = kNaN;
            }
            acc += c.off[k][d] * v;
        }
        out[k] = acc - 4.0 * std::exp(2.0 * m.u[k] + lw[k]);
    }
    return out;
}

double regular_residual_norm(const ScalarField& r, const std::function<bool(Complex)>& keep) {
    double worst = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) {
        if (!r.grid().stencil(k).regular() || !keep(r.grid().node(k))) continue;
        const double v = std::abs(r[k]);
        if (!(v <= worst)) worst = std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    }
    return worst;
}

ComparisonReport check_comparison(const MetricField& u1, const MetricField& u2, double tol) {
    if (u1.grid_ptr() != u2.grid_ptr()) throw ConfigError("comparison needs fields on the same grid");
    ComparisonReport rep;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < u1.u.size(); ++k) {
        const double m = u2.u[k] - u1.u[k];
        if (m < rep.worst_margin) {
            rep.worst_margin = m;
            rep.worst_point = u1.grid().node(k);
        }
    }
    rep.pass = rep.worst_margin >= -tol;
    if (!rep.pass) {
        std::ostringstream os;
        os << "comparison principle violated: u1 - u2 = " << -rep.worst_margin << " at " << rep.worst_point;
        throw VerificationError(os.str(), rep.worst_point, rep.worst_margin);
    }
    return rep;
}

double level_radius(double n) {
    const double e = std::exp(n);
    return (1.0 + std::sqrt(1.0 + 4.0 * e * e)) / (2.0 * e);
}

double default_bound_tolerance(const DomainGrid& grid) { return 4.0 * grid.spacing() * grid.spacing(); }

BoundsReport bounds_margins(const MetricField& m, double tol) {
    if (m.grid().descriptor().kind() != numerics::DomainKind::UnitDisk) {
        throw DomainError("bound checks need the unit disk (closed-form hyperbolic density)");
    }
    BoundsReport rep;
    rep.checked = true;
    rep.tolerance = tol;
    rep.ahlfors_margin = std::numeric_limits<double>::infinity();
    rep.upper_margin = std::numeric_limits<double>::infinity();
    const auto lw = log_weight(m);
    rep.lower_checked = m.kind == BoundaryKind::Blowup && m.h.is_blaschke() && !m.log_outer;
    const double R = rep.lower_checked ? level_radius(m.level) : 0.0;
    rep.lower_margin = rep.lower_checked ? std::numeric_limits<double>::infinity() : 0.0;
    for (std::size_t k = 0; k < m.u.size(); ++k) {
        const Complex z = m.grid().node(k);
        const double r2 = std::norm(z);
        const double log_lambda = -std::log1p(-r2);
        const double log_h = 0.5 * lw[k];
        rep.ahlfors_margin = std::min(rep.ahlfors_margin, 1.0 - std::exp(m.u[k] + log_h) * (1.0 - r2));
        if (log_h > std::log(1e-12)) {
            const double up = log_lambda - log_h - m.u[k];
            if (up < rep.upper_margin) {
                rep.upper_margin = up;
                rep.upper_worst = z;
            }
        }
        if (rep.lower_checked) {
            const double lo = m.u[k] - std::log(R / (R * R - r2));
            if (lo < rep.lower_margin) {
                rep.lower_margin = lo;
                rep.lower_worst = z;
            }
        }
    }
    rep.pass = rep.upper_margin >= -tol && (!rep.lower_checked || rep.lower_margin >= -tol);
    return rep;
}

BoundsReport check_bounds(const MetricField& m, double tol) {
    BoundsReport rep = bounds_margins(m, tol);
    if (rep.upper_margin < -tol) {
        std::ostringstream os;
        os << "upper bound u <= log(1/(1-|z|^2)) - log|h| violated by " << -rep.upper_margin << " at "
           << rep.upper_worst;
        throw VerificationError(os.str(), rep.upper_worst, rep.upper_margin);
    }
    if (rep.lower_checked && rep.lower_margin < -tol) {
        std::ostringstream os;
        os << "lower bound violated by " << -rep.lower_margin << " at " << rep.lower_worst;
        throw VerificationError(os.str(), rep.lower_worst, rep.lower_margin);
    }
    return rep;
}

double check_green_representation(const MetricField& m) {
    if (m.grid().descriptor().kind() != numerics::DomainKind::UnitDisk) {
        throw DomainError("Green representation check needs the unit disk");
    }
    if (m.kind != BoundaryKind::Dirichlet || !m.boundary) {
        throw ConfigError("Green representation check needs a Dirichlet field with its boundary data");
    }
    const GridPtr& grid = m.grid_ptr();
    const auto hx = numerics::harmonic_extension(grid, m.boundary);
    const auto lw = log_weight(m);
    ScalarField density(grid);
    for (std::size_t k = 0; k < density.size(); ++k) density[k] = 4.0 * std::exp(2.0 * m.u[k] + lw[k]);
    std::vector<std::size_t> targets;
    for (std::size_t k = 0; k < grid->size(); ++k) {
        if (std::abs(grid->node(k)) <= 0.5) targets.push_back(k);
    }
    const auto v = numerics::green_quadrature_at(density, targets);
    double err = 0.0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        err = std::max(err, std::abs(m.u[targets[i]] - (hx[targets[i]] + v[i])));
    }
    return err;
}

MetricField sample_metric(GridPtr grid, const inner::InnerFunction& h, const std::function<double(Complex)>& u,
                          BoundaryFunction boundary) {
    auto field = ScalarField::sample(grid, u);
    return MetricField{std::move(field), h, std::move(boundary), BoundaryKind::Dirichlet, 0.0, std::nullopt};
}

nlohmann::json to_json(const SolveReport& report) {
    nlohmann::json j;
    j["iterations"] = report.newton_iterations;
    j["residual"] = report.final_residual;
    j["damping_events"] = report.damping_events;
    j["fallback_solves"] = report.fallback_solves;
    j["formulation"] = report.formulation == Formulation::Reciprocal ? "reciprocal" : "logarithmic";
    j["converged"] = report.converged;
    nlohmann::json b;
    if (report.bounds.checked) {
        b["ahlfors_margin"] = report.bounds.ahlfors_margin;
        b["upper_margin"] = report.bounds.upper_margin;
        if (report.bounds.lower_checked) b["lower_margin"] = report.bounds.lower_margin;
        b["tolerance"] = report.bounds.tolerance;
        b["pass"] = report.bounds.pass;
    }
    j["bounds"] = b.is_null() ? nlohmann::json::object() : b;
    auto levels = nlohmann::json::array();
    for (const auto& l : report.blowup_levels) {
        nlohmann::json e{{"n", l.n}, {"delta", l.delta}, {"iterations", l.newton_iterations}, {"residual", l.residual}};
        if (l.bounds.checked) {
            e["upper_margin"] = l.bounds.upper_margin;
            e["ahlfors_margin"] = l.bounds.ahlfors_margin;
            if (l.bounds.lower_checked) e["lower_margin"] = l.bounds.lower_margin;
        }
        levels.push_back(e);
    }
    j["blowup_levels"] = levels;
    return j;
}

}  // namespace curvforge::curvature
