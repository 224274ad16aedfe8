#include "curvforge/pipeline/construct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include <Eigen/Dense>

#include "curvforge/io/json_util.hpp"
#include "curvforge/numerics/linear_solve.hpp"

namespace curvforge::pipeline {

using liouville::AnalyticSource;
using liouville::DevelopingMap;
using numerics::DomainDescriptor;
using numerics::GridPtr;
using numerics::ScalarField;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const PipelineError&) {
        throw;
    } catch (const Error& e) {
        throw PipelineError(name, e.what());
    }
}

double zero_distance(const std::vector<Complex>& zeros, Complex z) {
    double d = std::numeric_limits<double>::infinity();
    for (Complex a : zeros) d = std::min(d, std::abs(z - a));
    return d;
}

std::vector<Complex> zero_points(const inner::InnerFunction& h, const DomainDescriptor& dom) {
    std::vector<Complex> out;
    for (const auto& p : h.zeros()) {
        if (dom.contains(p.z)) out.push_back(p.z);
    }
    return out;
}

/// First candidate at least 0.15 from every zero, else the one farthest from them.
Complex choose_base(const std::vector<Complex>& zeros, Complex center, double scale) {
    std::vector<Complex> cand{center};
    for (double r : {0.25, 0.5}) {
        for (int k = 0; k < 8; ++k) cand.push_back(center + std::polar(r * scale, 2.0 * kPi * k / 8.0));
    }
    Complex best = center;
    double best_d = -1.0;
    for (Complex c : cand) {
        const double d = zero_distance(zeros, c);
        if (d >= 0.15 * scale) return c;
        if (d > best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

struct PolarTargets {
    std::vector<Complex> points;
    std::vector<std::array<int, 2>> index;  // (ring, angle)
};

PolarTargets polar_targets(Complex center, double rmax, int rings, int angles, const std::vector<Complex>& zeros,
                           double keep_out) {
    PolarTargets t;
    for (int i = 1; i <= rings; ++i) {
        const double r = rmax * i / rings;
        for (int j = 0; j < angles; ++j) {
            const double a = 2.0 * kPi * (j + 0.5 * (i % 2)) / angles;
            const Complex z = center + std::polar(r, a);
            if (zero_distance(zeros, z) < keep_out) continue;
            t.points.push_back(z);
            t.index.push_back({i, j});
        }
    }
    return t;
}

int max_index(const std::vector<Complex>& f) {
    int best = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (std::abs(f[i]) > std::abs(f[static_cast<std::size_t>(best)])) best = static_cast<int>(i);
    }
    return best;
}

double circle_sample_radius(const numerics::DomainGrid& g) {
    // 1 - 3 spacings; the tiny shrink keeps the points on the admissible side of the clearance test.
    return 1.0 - 3.0 * g.spacing() * (1.0 + 1e-9);
}

void check_positive(const BoundaryModulus& phi, const numerics::DomainGrid& g) {
    for (std::size_t k = 0; k < g.size(); ++k) {
        const auto& st = g.stencil(k);
        for (int d = 0; d < 4; ++d) {
            if (st.neighbor[static_cast<std::size_t>(d)] >= 0) continue;
            const double v = phi(st.boundary_point[static_cast<std::size_t>(d)]);
            if (!(v > 0.0) || !std::isfinite(v)) {
                std::ostringstream os;
                os << "boundary modulus must be finite and positive; got " << v << " at "
                   << st.boundary_point[static_cast<std::size_t>(d)];
                throw ConfigError(os.str());
            }
        }
    }
}

double sup_density(const curvature::MetricField& m, const inner::InnerFunction& h) {
    double s = 0.0;
    for (std::size_t k = 0; k < m.u.size(); ++k) {
        const double v = std::exp(m.u[k] + inner::log_modulus(h, m.grid().node(k)));
        if (std::isfinite(v)) s = std::max(s, v);
    }
    return s;
}

/// Profile points on the circle of radius 1 - 3 spacings (disk) or the boundary
/// inset by 3 spacings (rectangle); returns (point, boundary point) pairs.
std::vector<std::pair<Complex, Complex>> profile_points(const numerics::DomainGrid& g, int count) {
    std::vector<std::pair<Complex, Complex>> out;
    const auto& d = g.descriptor();
    if (d.kind() == numerics::DomainKind::UnitDisk) {
        const double r = circle_sample_radius(g);
        for (int k = 0; k < count; ++k) {
            const double a = 2.0 * kPi * k / count;
            out.emplace_back(std::polar(r, a), std::polar(1.0, a));
        }
        return out;
    }
    const double inset = 3.0 * g.spacing() * (1.0 + 1e-9);
    const Complex lo = d.lower_left(), hi = d.upper_right();
    const Complex c = 0.5 * (lo + hi);
    for (int k = 0; k < count; ++k) {
        const Complex dir = std::polar(1.0, 2.0 * kPi * k / count);
        const double t = *d.exit_distance(c, dir, 2.0 * d.diameter());
        const Complex xi = c + t * dir;
        Complex p = xi;
        p = {std::clamp(p.real(), lo.real() + inset, hi.real() - inset),
             std::clamp(p.imag(), lo.imag() + inset, hi.imag() - inset)};
        out.emplace_back(p, xi);
    }
    return out;
}

/// Develops the profile points and a coarse interior set; fills the diagnostics.
ConstructionResult develop_modulus(const curvature::MetricField& m, const inner::InnerFunction& h,
                                   const BoundaryModulus& phi, const ConstructOptions& options) {
    ConstructionResult res;
    const auto& g = m.grid();
    const auto src = AnalyticSource::grid_backed(m);
    const auto zeros = zero_points(h, g.descriptor());
    const auto& d = g.descriptor();
    const Complex center = d.kind() == numerics::DomainKind::UnitDisk ? Complex{} : 0.5 * (d.lower_left() + d.upper_right());
    const double scale = d.kind() == numerics::DomainKind::UnitDisk ? 1.0 : 0.5 * std::min(
        d.upper_right().real() - d.lower_left().real(), d.upper_right().imag() - d.lower_left().imag());
    const Complex z0 = choose_base(zeros, center, scale);
    const auto pp = profile_points(g, 64);
    auto interior = polar_targets(center, 0.8 * scale, 8, 16, zeros, 1.5 * options.develop.pole_margin);
    std::vector<Complex> targets;
    for (const auto& [p, xi] : pp) targets.push_back(p);
    targets.insert(targets.end(), interior.points.begin(), interior.points.end());
    res.f = stage("develop", [&] { return liouville::develop(src, h, z0, targets, options.develop); });
    res.f = liouville::frostman_shift(res.f, Complex{});
    res.diagnostics.repr_error = liouville::verify_representation(res.f, h, src);
    res.diagnostics.profile_radius = d.kind() == numerics::DomainKind::UnitDisk ? circle_sample_radius(g) : kNaN;
    for (std::size_t k = 0; k < pp.size(); ++k) {
        const auto& s = res.f.samples[k];
        ProfileSample ps;
        ps.angle = std::arg(pp[k].second - center);
        ps.value = std::abs(s.fprime) / (1.0 - std::norm(s.f));
        ps.target = phi(pp[k].second);
        res.diagnostics.profile_error = std::max(res.diagnostics.profile_error, std::abs(ps.value - ps.target));
        res.diagnostics.boundary_profile.push_back(ps);
    }
    res.diagnostics.sup_density = sup_density(m, h);
    for (const auto& s : res.f.samples) {
        res.diagnostics.sup_density =
            std::max(res.diagnostics.sup_density, std::abs(s.fprime) / (1.0 - std::norm(s.f)));
    }
    return res;
}

// ---------------------------------------------------------------- oracle pieces

struct Cluster {
    Complex c;
    int m;
};

std::vector<Complex> raw_critical_points(const std::vector<Complex>& zeros) {
    const inner::FiniteBlaschke b{zeros, Complex{1.0, 0.0}};
    auto roots = inner::polynomial_roots(inner::derivative_numerator(b));
    std::vector<Complex> inside;
    for (Complex r : roots) {
        if (std::abs(r) < 1.0) inside.push_back(r);
    }
    return inside;
}

/// Elementary symmetric functions of (rho - c) over each cluster's assigned roots.
std::vector<Complex> cluster_residual(const std::vector<Complex>& free, const std::vector<Cluster>& clusters) {
    std::vector<Complex> zeros{Complex{}};
    zeros.insert(zeros.end(), free.begin(), free.end());
    const auto crit = raw_critical_points(zeros);
    std::vector<Complex> targets;
    for (const auto& cl : clusters) targets.insert(targets.end(), static_cast<std::size_t>(cl.m), cl.c);
    if (crit.size() != targets.size()) throw SolverError("critical point count changed during the oracle iteration", 0, kNaN);
    std::vector<std::vector<double>> cost(targets.size(), std::vector<double>(crit.size()));
    for (std::size_t i = 0; i < targets.size(); ++i) {
        for (std::size_t j = 0; j < crit.size(); ++j) cost[i][j] = std::norm(targets[i] - crit[j]);
    }
    const auto assign = optimal_assignment(cost);
    std::vector<Complex> r;
    std::size_t row = 0;
    for (const auto& cl : clusters) {
        // e_k by the usual recurrence on the product of (x + (rho_i - c)).
        std::vector<Complex> e(static_cast<std::size_t>(cl.m) + 1, Complex{});
        e[0] = 1.0;
        for (int i = 0; i < cl.m; ++i, ++row) {
            const Complex d = crit[static_cast<std::size_t>(assign[row])] - cl.c;
            for (int k = i + 1; k >= 1; --k) e[static_cast<std::size_t>(k)] += e[static_cast<std::size_t>(k) - 1] * d;
        }
        r.insert(r.end(), e.begin() + 1, e.end());
    }
    return r;
}

double max_abs(const std::vector<Complex>& v) {
    double m = 0.0;
    for (Complex c : v) m = std::max(m, std::abs(c));
    return m;
}

double sum_sq(const std::vector<Complex>& v) {
    double s = 0.0;
    for (Complex c : v) s += std::norm(c);
    return s;
}

struct NewtonOutcome {
    bool ok = false;
    double residual = kNaN;
    int iterations = 0;
};

/// Damped Newton with a forward-difference real Jacobian.
NewtonOutcome oracle_newton(std::vector<Complex>& free, const std::vector<Cluster>& clusters, double tol,
                            int max_iterations) {
    NewtonOutcome out;
    const std::size_t n = free.size();
    std::vector<Complex> r;
    try {
        r = cluster_residual(free, clusters);
    } catch (const SolverError&) {
        return out;
    }
    for (int it = 0; it < max_iterations; ++it) {
        out.residual = max_abs(r);
        out.iterations = it;
        if (out.residual <= tol) {
            out.ok = true;
            return out;
        }
        Eigen::MatrixXd jac(2 * n, 2 * n);
        Eigen::VectorXd rhs(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            rhs(2 * i) = -r[i].real();
            rhs(2 * i + 1) = -r[i].imag();
        }
        try {
            for (std::size_t j = 0; j < 2 * n; ++j) {
                auto p = free;
                const double step = 1e-7 * std::max(1.0, std::abs(free[j / 2]));
                p[j / 2] += (j % 2 == 0) ? Complex{step, 0.0} : Complex{0.0, step};
                const auto rp = cluster_residual(p, clusters);
                for (std::size_t i = 0; i < n; ++i) {
                    jac(static_cast<Eigen::Index>(2 * i), static_cast<Eigen::Index>(j)) = (rp[i] - r[i]).real() / step;
                    jac(static_cast<Eigen::Index>(2 * i + 1), static_cast<Eigen::Index>(j)) = (rp[i] - r[i]).imag() / step;
                }
            }
        } catch (const SolverError&) {
            return out;
        }
        const Eigen::VectorXd dx = jac.colPivHouseholderQr().solve(rhs);
        if (!dx.allFinite()) return out;
        double t = 1.0;
        bool accepted = false;
        for (int half = 0; half <= 20; ++half, t *= 0.5) {
            auto p = free;
            bool inside = true;
            for (std::size_t i = 0; i < n; ++i) {
                p[i] += t * Complex{dx(static_cast<Eigen::Index>(2 * i)), dx(static_cast<Eigen::Index>(2 * i + 1))};
                inside = inside && std::abs(p[i]) < 1.0;
            }
            if (!inside) continue;
            try {
                auto rp = cluster_residual(p, clusters);
                if (sum_sq(rp) < sum_sq(r)) {
                    free = std::move(p);
                    r = std::move(rp);
                    accepted = true;
                    break;
                }
            } catch (const SolverError&) {
            }
        }
        if (!accepted) break;
    }
    out.residual = max_abs(r);
    out.ok = out.residual <= tol;
    return out;
}

}  // namespace

// ------------------------------------------------------------------ matching

std::vector<int> optimal_assignment(const std::vector<std::vector<double>>& cost) {
    const std::size_t n = cost.size();
    for (const auto& row : cost) {
        if (row.size() != n) throw ConfigError("assignment needs a square cost matrix");
    }
    if (n == 0) return {};
    // Shortest augmenting paths with potentials, 1-based with a dummy column 0.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = p[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> assign(n, -1);
    for (std::size_t j = 1; j <= n; ++j) assign[p[j] - 1] = static_cast<int>(j - 1);
    return assign;
}

std::vector<double> matched_residuals(const std::vector<Complex>& requested, const std::vector<Complex>& computed) {
    if (requested.size() != computed.size()) {
        std::ostringstream os;
        os << "cannot match " << computed.size() << " computed points to " << requested.size() << " requested";
        throw ConfigError(os.str());
    }
    std::vector<std::vector<double>> cost(requested.size(), std::vector<double>(computed.size()));
    for (std::size_t i = 0; i < requested.size(); ++i) {
        for (std::size_t j = 0; j < computed.size(); ++j) cost[i][j] = std::norm(requested[i] - computed[j]);
    }
    const auto a = optimal_assignment(cost);
    std::vector<double> r(requested.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::abs(requested[i] - computed[static_cast<std::size_t>(a[i])]);
    return r;
}

Complex blaschke_value(const inner::FiniteBlaschke& b, Complex z) {
    Complex v = b.unimodular;
    for (Complex a : b.zeros) v *= (z - a) / (1.0 - std::conj(a) * z);
    return v;
}

double boundary_density_min(const inner::FiniteBlaschke& f, const inner::InnerFunction& h, double r, int nodes) {
    const inner::InnerFunction fi(f);
    double m = std::numeric_limits<double>::infinity();
    for (int k = 0; k < nodes; ++k) {
        const Complex z = std::polar(r, 2.0 * kPi * (k + 0.5) / nodes);
        const auto j = inner::jet(fi, z);
        const double v = std::abs(j.d1) / ((1.0 - std::norm(j.value)) * std::exp(inner::log_modulus(h, z)));
        m = std::min(m, v);
    }
    return m;
}

// ------------------------------------------------------------- construction

ConstructionResult construct_blaschke(const inner::CriticalSpec& spec, const ConstructOptions& options) {
    auto grid = numerics::build_grid(DomainDescriptor::unit_disk(), options.resolution);
    const double sp = grid->spacing();
    for (const auto& p : spec.points()) {
        if (1.0 - std::abs(p.z) < 4.0 * sp) {
            std::ostringstream os;
            os << "critical point " << p.z << " is closer than 4 grid spacings to the circle";
            throw ConfigError(os.str());
        }
    }
    const auto h = inner::blaschke_from_spec(spec);
    const int n = spec.total_multiplicity();

    curvature::BlowupOptions bo;
    bo.schedule = options.schedule;
    auto [m, report] = stage("solve", [&] { return curvature::solve_blowup(grid, h, bo); });

    ConstructionResult res;
    res.spec = spec;
    res.solve = report;
    const auto src = AnalyticSource::grid_backed(m);
    const auto zeros = spec.expanded();
    const Complex z0 = choose_base(zeros, {}, 1.0);
    const double rmax = std::min(options.sample_radius, 1.0 - 5.0 * sp);
    const double keep_out = 1.5 * options.develop.pole_margin;
    const auto targets = polar_targets({}, rmax, options.rings, options.angles, zeros, keep_out);
    res.f = stage("develop", [&] { return liouville::develop(src, h, z0, targets.points, options.develop); });
    res.diagnostics.repr_error = liouville::verify_representation(res.f, h, src);

    // Zeros of f: local minima of |f| on the polar lattice, polished by Newton with the developed f'.
    const auto found = stage("zeros", [&] {
        std::map<std::array<int, 2>, std::size_t> at;
        for (std::size_t i = 0; i < targets.index.size(); ++i) at[targets.index[i]] = i;
        std::vector<Complex> seeds{z0};
        for (std::size_t i = 0; i < targets.index.size(); ++i) {
            const double fi = std::abs(res.f.samples[i].f);
            if (fi > 0.5) continue;
            const auto [ri, aj] = targets.index[i];
            bool minimum = true;
            for (int dr = -1; dr <= 1 && minimum; ++dr) {
                for (int da = -1; da <= 1; ++da) {
                    if (dr == 0 && da == 0) continue;
                    const int a = (aj + da + options.angles) % options.angles;
                    const auto it = at.find({ri + dr, a});
                    if (it != at.end() && std::abs(res.f.samples[it->second].f) < fi) {
                        minimum = false;
                        break;
                    }
                }
            }
            if (minimum) seeds.push_back(targets.points[i]);
        }
        std::vector<Complex> roots;
        for (Complex z : seeds) {
            // Grid-backed A_u leaves a small monodromy around each zero of h, so f jumps
            // slightly across the branch line behind it and Newton may cycle there.
            bool ok = false;
            double best = std::numeric_limits<double>::infinity();
            Complex best_z = z;
            for (int it = 0; it < 40; ++it) {
                DevelopingMap one;
                try {
                    one = liouville::develop(src, h, z0, {z}, options.develop);
                } catch (const Error&) {
                    break;
                }
                const auto& s = one.samples[0];
                if (std::abs(s.f) < best) {
                    best = std::abs(s.f);
                    best_z = z;
                } else if (it > 4) {
                    break;
                }
                if (best <= options.zero_tol) break;
                const Complex step = s.f / s.fprime;
                z -= step;
                if (std::abs(step) < 1e-14) break;
            }
            z = best_z;
            ok = best <= options.zero_accept;
            if (!ok) continue;
            if (zero_distance(roots, z) > 1e-6) roots.push_back(z);
        }
        if (static_cast<int>(roots.size()) != n + 1) {
            std::ostringstream os;
            os << "found " << roots.size() << " zeros of f, expected " << n + 1
               << " (degree violation; zeros beyond radius " << rmax << " are not searched)";
            throw VerificationError(os.str(), z0, static_cast<double>(roots.size()));
        }
        return roots;
    });

    std::vector<Complex> fvals;
    for (const auto& s : res.f.samples) fvals.push_back(s.f);
    const auto ref = static_cast<std::size_t>(max_index(fvals));
    inner::FiniteBlaschke fit{found, Complex{1.0, 0.0}};
    const Complex lam = res.f.samples[ref].f / blaschke_value(fit, res.f.samples[ref].z);
    fit.unimodular = lam / std::abs(lam);
    for (const auto& s : res.f.samples) {
        res.diagnostics.fit_residual = std::max(res.diagnostics.fit_residual, std::abs(s.f - blaschke_value(fit, s.z)));
    }
    // The finite case needs no Frostman shift; alpha = 0 leaves f unchanged.
    res.f = liouville::frostman_shift(res.f, Complex{});
    res.fitted = fit;
    res.degree = fit.degree();
    if (n > 0) {
        res.diagnostics.critical_residuals =
            matched_residuals(spec.expanded(), inner::critical_points_of_finite_blaschke(fit));
    }
    return res;
}

OracleResult invert_critical_map(const inner::CriticalSpec& spec, const OracleOptions& options) {
    const int n = spec.total_multiplicity();
    if (n > 12) throw ConfigError("the oracle supports total multiplicity up to 12");
    OracleResult out;
    if (n == 0) {
        out.blaschke = {{Complex{}}, Complex{1.0, 0.0}};
        return out;
    }
    std::vector<Complex> free;
    if (options.seed) {
        if (static_cast<int>(options.seed->size()) != n + 1) throw ConfigError("oracle seed needs n + 1 zeros");
        free.assign(options.seed->begin() + 1, options.seed->end());
    } else {
        // Spec points nudged apart: coincident zeros make the Jacobian singular.
        free = spec.expanded();
        for (std::size_t j = 0; j < free.size(); ++j) {
            free[j] += 0.1 * (1.0 - std::abs(free[j])) * std::polar(1.0, 0.3 + 2.0 * kPi * j / free.size());
        }
    }
    for (Complex& a : free) {
        if (!(std::abs(a) < 1.0)) throw ConfigError("oracle seed zeros must lie in the open disk");
    }
    std::vector<Cluster> clusters;
    for (const auto& p : spec.points()) clusters.push_back({p.z, p.multiplicity});

    auto seed = free;
    auto res = oracle_newton(free, clusters, options.tolerance, options.max_iterations);
    out.iterations = res.iterations;
    if (!res.ok) {
        // Homotopy: move simple targets from the seed's own critical points to the spec.
        out.used_homotopy = true;
        free = seed;
        std::vector<Complex> zeros{Complex{}};
        zeros.insert(zeros.end(), free.begin(), free.end());
        const auto start = raw_critical_points(zeros);
        const auto goal = spec.expanded();
        std::vector<Complex> from(goal.size());
        if (start.size() == goal.size()) {
            std::vector<std::vector<double>> cost(goal.size(), std::vector<double>(start.size()));
            for (std::size_t i = 0; i < goal.size(); ++i) {
                for (std::size_t j = 0; j < start.size(); ++j) cost[i][j] = std::norm(goal[i] - start[j]);
            }
            const auto a = optimal_assignment(cost);
            for (std::size_t i = 0; i < goal.size(); ++i) from[i] = start[static_cast<std::size_t>(a[i])];
            bool ok = true;
            for (int s = 1; s < options.homotopy_steps && ok; ++s) {
                const double t = static_cast<double>(s) / options.homotopy_steps;
                std::vector<Cluster> simple;
                for (std::size_t i = 0; i < goal.size(); ++i) simple.push_back({(1.0 - t) * from[i] + t * goal[i], 1});
                const auto step = oracle_newton(free, simple, 1e-9, options.max_iterations);
                out.iterations += step.iterations;
                ok = step.ok;
            }
            if (ok) {
                res = oracle_newton(free, clusters, options.tolerance, options.max_iterations);
                out.iterations += res.iterations;
            }
        }
    }
    if (!res.ok) {
        std::ostringstream os;
        os << "critical-point inversion failed; residual " << res.residual;
        throw SolverError(os.str(), out.iterations, res.residual);
    }
    out.residual = res.residual;
    out.blaschke.zeros = {Complex{}};
    out.blaschke.zeros.insert(out.blaschke.zeros.end(), free.begin(), free.end());
    return out;
}

ConstructionResult construct_with_boundary_modulus(const inner::CriticalSpec& spec, const BoundaryModulus& phi,
                                                   const DomainDescriptor& domain, const ConstructOptions& options) {
    if (!domain.simply_connected()) {
        throw DomainError("boundary-modulus construction needs a simply connected domain; got " + domain.name());
    }
    auto grid = numerics::build_grid(domain, options.resolution);
    const auto roots = spec.expanded();
    for (Complex r : roots) {
        if (std::abs(domain.distance_to_boundary(r)) < 1e-12) {
            std::ostringstream os;
            os << "root " << r << " of p lies on the boundary: phi / |p| is unbounded there";
            throw ConfigError(os.str());
        }
    }
    check_positive(phi, *grid);
    const inner::InnerFunction h(inner::Polynomial::from_roots(roots));
    auto boundary = [&](Complex xi) { return std::log(phi(xi)) - inner::log_modulus(h, xi); };
    auto [m, report] = stage("solve", [&] { return curvature::solve_dirichlet(grid, h, boundary); });
    auto res = develop_modulus(m, h, phi, options);
    res.spec = spec;
    res.solve = report;
    return res;
}

ScalarField conjugate_harmonic(const ScalarField& v, Complex anchor) {
    const auto& g = v.grid();
    const double sp = g.spacing();
    auto val = [&](int i, int j) {
        const int k = g.index_of(i, j);
        return k >= 0 ? v[static_cast<std::size_t>(k)] : kNaN;
    };
    // One axis derivative at a lattice node: central when both neighbors exist, else one-sided.
    auto axis = [&](int i, int j, int di, int dj) {
        const double c = val(i, j), p = val(i + di, j + dj), m = val(i - di, j - dj);
        if (std::isfinite(p) && std::isfinite(m)) return (p - m) / (2.0 * sp);
        const double p2 = val(i + 2 * di, j + 2 * dj), m2 = val(i - 2 * di, j - 2 * dj);
        if (std::isfinite(p) && std::isfinite(p2)) return (-3.0 * c + 4.0 * p - p2) / (2.0 * sp);
        if (std::isfinite(m) && std::isfinite(m2)) return (3.0 * c - 4.0 * m + m2) / (2.0 * sp);
        if (std::isfinite(p)) return (p - c) / sp;
        if (std::isfinite(m)) return (c - m) / sp;
        return 0.0;
    };
    ScalarField out(v.grid_ptr(), kNaN);
    std::size_t k0 = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (std::abs(g.node(k) - anchor) < best) {
            best = std::abs(g.node(k) - anchor);
            k0 = k;
        }
    }
    const auto [i0, j0] = g.lattice_index(k0);
    auto set = [&](int i, int j, double x) { out[static_cast<std::size_t>(g.index_of(i, j))] = x; };
    auto get = [&](int i, int j) { return out[static_cast<std::size_t>(g.index_of(i, j))]; };
    set(i0, j0, 0.0);
    // d(v~)/dy = dv/dx along the anchor column, d(v~)/dx = -dv/dy along rows; trapezoid per edge.
    for (int dir : {1, -1}) {
        for (int j = j0; g.interior(i0, j + dir); j += dir) {
            const double step = 0.5 * (axis(i0, j, 1, 0) + axis(i0, j + dir, 1, 0)) * sp * dir;
            set(i0, j + dir, get(i0, j) + step);
        }
    }
    for (int j = 0; j < g.ny(); ++j) {
        if (!g.interior(i0, j)) continue;
        for (int dir : {1, -1}) {
            for (int i = i0; g.interior(i + dir, j); i += dir) {
                const double step = -0.5 * (axis(i, j, 0, 1) + axis(i + dir, j, 0, 1)) * sp * dir;
                set(i + dir, j, get(i, j) + step);
            }
        }
    }
    return out;
}

ConstructionResult construct_with_ae_boundary_modulus(const inner::CriticalSpec& spec, const BoundaryModulus& phi,
                                                      const ConstructOptions& options,
                                                      std::function<Complex(Complex)> closed_form_g) {
    auto grid = numerics::build_grid(DomainDescriptor::unit_disk(), options.resolution);
    check_positive(phi, *grid);
    const auto v = stage("harmonic", [&] {
        return numerics::harmonic_extension(grid, [&](Complex xi) { return std::log(phi(xi)); });
    });
    const auto vt = conjugate_harmonic(v, {});
    double conj_err = 0.0;
    if (closed_form_g) {
        for (std::size_t k = 0; k < grid->size(); ++k) {
            const Complex g = std::exp(Complex{v[k], vt[k]});
            conj_err = std::max(conj_err, std::abs(g - closed_form_g(grid->node(k))));
        }
    }
    const auto b = inner::blaschke_from_spec(spec);
    curvature::DirichletOptions dopt;
    dopt.log_outer = v;
    auto [m, report] = stage("solve", [&] {
        return curvature::solve_dirichlet(grid, b, [](Complex) { return 0.0; }, dopt);
    });
    // u solves the equation for h = B g. U = u + v solves it for h = B with the same
    // developing map: the A_u coefficients and u + log|h| agree identically.
    curvature::MetricField shifted = m;
    for (std::size_t k = 0; k < shifted.u.size(); ++k) shifted.u[k] += v[k];
    shifted.log_outer.reset();
    shifted.boundary = [phi](Complex xi) { return std::log(phi(xi)); };
    auto res = develop_modulus(shifted, b, phi, options);
    res.spec = spec;
    res.solve = report;
    res.diagnostics.conjugate_error = conj_err;
    return res;
}

// -------------------------------------------------------------- equivalence

EquivalenceVerdict equivalence_up_to_automorphism(const ConstructionResult& r1, const inner::FiniteBlaschke& b,
                                                  double tol) {
    EquivalenceVerdict v;
    v.tolerance = tol;
    std::vector<Complex> f, g;
    for (const auto& s : r1.f.samples) {
        f.push_back(s.f);
        g.push_back(blaschke_value(b, s.z));
    }
    v.fit = liouville::mobius_fit(f, g, {}, tol);
    v.equivalent = v.fit.ok;
    return v;
}

EquivalenceVerdict equivalence_up_to_automorphism(const ConstructionResult& r1, const ConstructionResult& r2,
                                                  double tol) {
    std::map<std::pair<double, double>, Complex> other;
    for (const auto& s : r2.f.samples) other[{s.z.real(), s.z.imag()}] = s.f;
    std::vector<Complex> f, g;
    for (const auto& s : r1.f.samples) {
        const auto it = other.find({s.z.real(), s.z.imag()});
        if (it == other.end()) continue;
        f.push_back(s.f);
        g.push_back(it->second);
    }
    if (f.size() < 13) {
        if (r2.fitted) return equivalence_up_to_automorphism(r1, *r2.fitted, tol);
        throw ConfigError("equivalence check needs common sample points or a fitted second map");
    }
    EquivalenceVerdict v;
    v.tolerance = tol;
    v.fit = liouville::mobius_fit(f, g, {}, tol);
    v.equivalent = v.fit.ok;
    return v;
}

// --------------------------------------------------------------------- JSON

nlohmann::json to_json(const ConstructionResult& r) {
    using io::complex_json;
    nlohmann::json j;
    j["spec"] = inner::to_json(r.spec);
    j["degree"] = r.degree > 0 ? nlohmann::json(r.degree) : nlohmann::json(nullptr);
    nlohmann::json zeros = nlohmann::json::array();
    if (r.fitted) {
        for (Complex a : r.fitted->zeros) zeros.push_back(complex_json(a));
        j["unimodular"] = complex_json(r.fitted->unimodular);
    } else {
        j["unimodular"] = nullptr;
    }
    j["zeros"] = zeros;
    const auto& d = r.diagnostics;
    nlohmann::json diag;
    diag["repr_error"] = d.repr_error;
    diag["critical_residuals"] = d.critical_residuals;
    nlohmann::json prof = nlohmann::json::array();
    for (const auto& p : d.boundary_profile) {
        nlohmann::json e{{"angle", p.angle}, {"value", p.value}};
        if (std::isfinite(p.target)) e["target"] = p.target;
        prof.push_back(e);
    }
    diag["boundary_profile"] = prof;
    diag["profile_radius"] = std::isfinite(d.profile_radius) ? nlohmann::json(d.profile_radius) : nlohmann::json(nullptr);
    diag["profile_error"] = d.profile_error;
    diag["sup_density"] = d.sup_density;
    diag["fit_residual"] = d.fit_residual;
    diag["conjugate_error"] = d.conjugate_error;
    diag["base"] = complex_json(r.f.base);
    diag["samples"] = r.f.samples.size();
    j["diagnostics"] = diag;
    j["solve"] = curvature::to_json(r.solve);
    return j;
}

}  // namespace curvforge::pipeline
