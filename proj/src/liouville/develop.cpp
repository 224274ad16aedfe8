#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "curvforge/io/json_util.hpp"
#include "curvforge/liouville/developing_map.hpp"

namespace curvforge::liouville {

namespace {

using State = std::array<Complex, 4>;  // y1, y1', y2, y2'

double segment_distance(Complex p, Complex a, Complex b) {
    const Complex d = b - a;
    const double len2 = std::norm(d);
    double t = len2 > 0.0 ? ((p - a) * std::conj(d)).real() / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

bool segment_inside(const numerics::DomainDescriptor& dom, double clearance, Complex a, Complex b) {
    const double len = std::abs(b - a);
    const int pieces = std::max(1, static_cast<int>(std::ceil(len / 0.005)));
    for (int i = 0; i <= pieces; ++i) {
        const Complex p = a + (b - a) * (static_cast<double>(i) / pieces);
        const double d = dom.distance_to_boundary(p);
        if (!(d > 0.0) || d < clearance) return false;
    }
    return true;
}

// Dormand–Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB[7] = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kBs[7] = {5179.0 / 57600, 0.0, 7571.0 / 16695, 393.0 / 640, -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

// y'' + A y = 0 along z = a + t (b - a), t in [0, 1].
State integrate_segment(const std::function<Complex(Complex)>& coef, Complex a, Complex b, State y,
                        const DevelopOptions& o, int& steps) {
    const Complex d = b - a;
    auto rhs = [&](double t, const State& s) {
        const Complex av = coef(a + t * d);
        return State{d * s[1], -d * av * s[0], d * s[3], -d * av * s[2]};
    };
    double t = 0.0;
    double dt = std::min(1.0, 0.02 / std::max(std::abs(d), 1e-12));
    State k[7];
    k[0] = rhs(0.0, y);
    while (t < 1.0) {
        if (steps >= o.max_steps) throw SolverError("developing ODE exceeded the step budget", steps, 0.0);
        dt = std::min(dt, 1.0 - t);
        for (int s = 1; s < 7; ++s) {
            State ys = y;
            for (int j = 0; j < s; ++j) {
                for (int c = 0; c < 4; ++c) ys[c] += dt * kA[s][j] * k[j][c];
            }
            k[s] = rhs(t + kC[s] * dt, ys);
        }
        State yn = y;
        double err = 0.0;
        for (int c = 0; c < 4; ++c) {
            Complex e{};
            for (int s = 0; s < 7; ++s) {
                yn[c] += dt * kB[s] * k[s][c];
                e += dt * (kB[s] - kBs[s]) * k[s][c];
            }
            const double sc = o.atol + o.rtol * std::max(std::abs(y[c]), std::abs(yn[c]));
            err = std::max(err, std::abs(e) / sc);
        }
        ++steps;
        if (!std::isfinite(err)) {
            dt *= 0.2;
            continue;
        }
        if (err <= 1.0) {
            t += dt;
            y = yn;
            k[0] = k[6];  // first-same-as-last
        }
        const double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        dt *= std::clamp(factor, 0.2, 5.0);
        if (dt < 1e-14) throw SolverError("developing ODE step size underflow", steps, err);
    }
    return y;
}

std::vector<Complex> poles_of(const inner::InnerFunction& h, const numerics::DomainDescriptor& dom) {
    std::vector<Complex> out;
    for (const auto& p : h.zeros()) {
        if (dom.contains(p.z)) out.push_back(p.z);
    }
    return out;
}

double min_pole_distance(const std::vector<Complex>& poles, Complex z) {
    double d = std::numeric_limits<double>::infinity();
    for (Complex p : poles) d = std::min(d, std::abs(z - p));
    return d;
}

}  // namespace

std::vector<Complex> plan_path(const numerics::DomainDescriptor& domain, double boundary_clearance,
                               const std::vector<Complex>& poles, Complex a, Complex b, double margin, int side) {
    for (Complex e : {a, b}) {
        if (min_pole_distance(poles, e) < margin) {
            std::ostringstream os;
            os << "path endpoint " << e << " lies within " << margin << " of a zero of h";
            throw DomainError(os.str());
        }
    }
    std::vector<Complex> path{a, b};
    for (int iter = 0; iter < 64; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i + 1 < path.size() && !changed; ++i) {
            const Complex p0 = path[i], p1 = path[i + 1];
            const Complex* hit = nullptr;
            double best = margin * (1.0 - 1e-9);
            for (const Complex& p : poles) {
                const double d = segment_distance(p, p0, p1);
                if (d < best) {
                    best = d;
                    hit = &p;
                }
            }
            if (!hit) continue;
            const Complex dir = (p1 - p0) / std::abs(p1 - p0);
            const Complex normal = Complex{0.0, 1.0} * dir;
            const double cross = ((*hit - p0) * std::conj(dir)).imag();
            int s = side;
            if (s == 0) s = cross > 1e-12 ? -1 : 1;
            bool placed = false;
            for (int attempt = 0; attempt < 2 && !placed; ++attempt) {
                const Complex q = *hit + static_cast<double>(s) * 2.0 * margin * normal;
                const double dq = domain.distance_to_boundary(q);
                if (dq > boundary_clearance && min_pole_distance(poles, q) >= margin * (1.0 - 1e-9)) {
                    path.insert(path.begin() + static_cast<std::ptrdiff_t>(i) + 1, q);
                    placed = true;
                } else if (side != 0) {
                    break;
                }
                s = -s;
            }
            if (!placed) {
                std::ostringstream os;
                os << "no detour with clearance " << margin << " around the zero " << *hit;
                throw DomainError(os.str());
            }
            changed = true;
        }
        if (!changed) {
            for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                if (!segment_inside(domain, boundary_clearance, path[i], path[i + 1])) {
                    std::ostringstream os;
                    os << "path from " << a << " to " << b << " leaves the admissible region";
                    throw DomainError(os.str());
                }
            }
            return path;
        }
    }
    throw DomainError("path planner did not settle on a detour");
}

DevelopingMap develop(const AnalyticSource& src, const inner::InnerFunction& h, Complex z0,
                      const std::vector<Complex>& targets, const DevelopOptions& options) {
    const auto poles = poles_of(h, src.domain());
    // Coarse grid-backed sources cannot be evaluated as close to a zero as the default margin.
    const double margin = std::max(options.pole_margin, src.zero_clearance() * (1.0 + 1e-9));
    if (min_pole_distance(poles, z0) < margin) {
        throw DomainError("base point lies within pole_margin of a zero of h");
    }
    const Wirtinger w0 = src.evaluate(z0);
    const Complex l1 = inner::log_derivative(h, z0).first;
    DevelopingMap dm;
    dm.base = z0;
    dm.u1_base = w0.u + inner::log_modulus(h, z0);
    dm.du1_base = w0.uz + 0.5 * l1;
    const State y0{Complex{}, Complex{std::exp(dm.u1_base), 0.0}, Complex{1.0, 0.0}, -dm.du1_base};

    // Plan serially so planner errors surface deterministically.
    dm.samples.resize(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        auto& s = dm.samples[i];
        s.z = targets[i];
        s.path = plan_path(src.domain(), src.clearance(), poles, z0, targets[i], margin,
                           options.detour_side);
        s.clearance = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k + 1 < s.path.size(); ++k) {
            for (Complex p : poles) s.clearance = std::min(s.clearance, segment_distance(p, s.path[k], s.path[k + 1]));
        }
    }
    auto coef = [&](Complex z) { return compute_Au(src, h, z); };
    std::vector<std::exception_ptr> errors(targets.size());
    const auto count = static_cast<std::ptrdiff_t>(targets.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        auto& s = dm.samples[static_cast<std::size_t>(i)];
        try {
            State y = y0;
            for (std::size_t k = 0; k + 1 < s.path.size(); ++k) {
                y = integrate_segment(coef, s.path[k], s.path[k + 1], y, options, s.steps);
            }
            s.f = y[0] / y[2];
            s.fprime = (y[1] * y[2] - y[0] * y[3]) / (y[2] * y[2]);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    for (const auto& s : dm.samples) {
        if (!(std::abs(s.f) < 1.0)) {
            std::ostringstream os;
            os << "developed |f| = " << std::abs(s.f) << " >= 1 at " << s.z
               << ": inconsistent input (no map into the disk has this metric)";
            throw VerificationError(os.str(), s.z, std::abs(s.f));
        }
    }
    return dm;
}

double verify_representation(const DevelopingMap& dm, const inner::InnerFunction& h, const AnalyticSource& src) {
    double worst = 0.0;
    for (const auto& s : dm.samples) {
        const double u = src.evaluate(s.z).u;
        const double rep = std::log(std::abs(s.fprime)) - std::log1p(-std::norm(s.f)) - inner::log_modulus(h, s.z);
        worst = std::max(worst, std::abs(u - rep));
    }
    return worst;
}

Complex MobiusFit::apply(Complex z) const {
    return (coefficients[0] * z + coefficients[1]) / (coefficients[2] * z + coefficients[3]);
}

MobiusFit mobius_fit(const std::vector<Complex>& f, const std::vector<Complex>& g, std::vector<std::size_t> fit,
                     double tol) {
    MobiusFit out;
    if (f.size() != g.size() || f.size() < 3) {
        out.message = "need at least three common samples";
        return out;
    }
    if (fit.empty()) {
        fit.push_back(0);
        std::size_t far = 0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (std::abs(g[i] - g[0]) > std::abs(g[far] - g[0])) far = i;
        }
        fit.push_back(far);
        std::size_t third = 0;
        double spread = -1.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double m = std::min(std::abs(g[i] - g[fit[0]]), std::abs(g[i] - g[fit[1]]));
            if (m > spread) {
                spread = m;
                third = i;
            }
        }
        fit.push_back(third);
    }
    if (fit.size() != 3) {
        out.message = "the fit needs exactly three points";
        return out;
    }
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            if (std::abs(g[fit[i]] - g[fit[j]]) < 1e-12) {
                out.message = "fit values of g are not distinct";
                return out;
            }
        }
    }
    Eigen::Matrix<Complex, 3, 4> m;
    for (int i = 0; i < 3; ++i) {
        const Complex gi = g[fit[i]], fi = f[fit[i]];
        m(i, 0) = gi;
        m(i, 1) = 1.0;
        m(i, 2) = -fi * gi;
        m(i, 3) = -fi;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
    const Eigen::VectorXcd v = svd.matrixV().col(3);
    for (int i = 0; i < 4; ++i) out.coefficients[i] = v[i];
    const Complex p = v[0], q = v[1];
    if (std::abs(p) < 1e-14 * v.norm()) {
        out.message = "fitted Moebius map does not vanish inside the disk";
        return out;
    }
    out.a = -q / p;
    const Complex zs = std::abs(out.a) > 1e-3 ? Complex{} : Complex{0.5, 0.0};
    const Complex rot = out.apply(zs) * (1.0 - std::conj(out.a) * zs) / (zs - out.a);
    out.theta = std::arg(rot);
    for (double t : {0.3, 2.4, 4.5}) {
        out.boundary_deviation = std::max(out.boundary_deviation, std::abs(std::abs(out.apply(std::polar(1.0, t))) - 1.0));
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (std::find(fit.begin(), fit.end(), i) != fit.end()) continue;
        const double e = std::abs(f[i] - out.apply(g[i]));
        if (!(e <= out.fit_residual)) {
            out.fit_residual = std::isnan(e) ? std::numeric_limits<double>::infinity() : e;
            out.worst_index = i;
        }
    }
    const double btol = std::max(1e-6, tol);
    out.ok = std::abs(out.a) < 1.0 && out.boundary_deviation <= btol && out.fit_residual <= tol;
    if (!out.ok) {
        std::ostringstream os;
        if (!(std::abs(out.a) < 1.0) || out.boundary_deviation > btol) {
            os << "fitted map is not a disk automorphism (boundary deviation " << out.boundary_deviation << ")";
        } else {
            os << "mismatch " << out.fit_residual << " at sample " << out.worst_index;
        }
        out.message = os.str();
    }
    return out;
}

DevelopingMap frostman_shift(const DevelopingMap& dm, Complex alpha) {
    if (!(std::abs(alpha) < 1.0)) throw ConfigError("Frostman shift needs |alpha| < 1");
    DevelopingMap out = dm;
    for (auto& s : out.samples) {
        const Complex den = 1.0 - std::conj(alpha) * s.f;
        s.fprime = s.fprime * (1.0 - std::norm(alpha)) / (den * den);
        s.f = (s.f - alpha) / den;
    }
    return out;
}

CriticalRecovery recover_critical_derivative(const AnalyticSource& src, const inner::InnerFunction& h, Complex z0,
                                             Complex zj, const DevelopOptions& options, int nodes) {
    const double rho = 2.0 * options.pole_margin;
    std::vector<Complex> ring(static_cast<std::size_t>(nodes));
    for (int k = 0; k < nodes; ++k) ring[static_cast<std::size_t>(k)] = zj + std::polar(rho, 2.0 * kPi * k / nodes);
    const auto dm = develop(src, h, z0, ring, options);
    CriticalRecovery out;
    for (const auto& s : dm.samples) {
        out.fprime_at_zero += s.fprime;
        out.local_scale = std::max(out.local_scale, std::abs(s.fprime));
    }
    out.fprime_at_zero /= static_cast<double>(nodes);
    return out;
}

nlohmann::json to_json(const DevelopingMap& dm, std::optional<double> repr_error) {
    using io::complex_json;
    nlohmann::json j;
    j["base"] = complex_json(dm.base);
    j["u1_base"] = dm.u1_base;
    j["du1_base"] = complex_json(dm.du1_base);
    auto targets = nlohmann::json::array();
    auto paths = nlohmann::json::array();
    for (const auto& s : dm.samples) {
        auto path = nlohmann::json::array();
        for (Complex p : s.path) path.push_back(complex_json(p));
        targets.push_back({{"z", complex_json(s.z)}, {"f", complex_json(s.f)}, {"fprime", complex_json(s.fprime)}});
        paths.push_back({{"waypoints", path},
                         {"clearance", std::isfinite(s.clearance) ? nlohmann::json(s.clearance) : nlohmann::json(nullptr)},
                         {"steps", s.steps}});
    }
    j["targets"] = targets;
    j["report"] = {{"paths", paths}};
    j["report"]["max_repr_error"] = repr_error ? nlohmann::json(*repr_error) : nlohmann::json(nullptr);
    return j;
}

DevelopingMap developing_map_from_json(const nlohmann::json& j) {
    using io::complex_from_json;
    DevelopingMap dm;
    dm.base = complex_from_json(j.at("base"));
    dm.u1_base = j.value("u1_base", 0.0);
    if (j.contains("du1_base")) dm.du1_base = complex_from_json(j.at("du1_base"));
    const auto& t = j.at("targets");
    const nlohmann::json* paths = j.contains("report") && j["report"].contains("paths") ? &j["report"]["paths"] : nullptr;
    for (std::size_t i = 0; i < t.size(); ++i) {
        DevelopSample s;
        s.z = complex_from_json(t[i].at("z"));
        s.f = complex_from_json(t[i].at("f"));
        s.fprime = complex_from_json(t[i].at("fprime"));
        if (paths && i < paths->size()) {
            for (const auto& p : (*paths)[i].at("waypoints")) s.path.push_back(complex_from_json(p));
            const auto& c = (*paths)[i].at("clearance");
            s.clearance = c.is_null() ? std::numeric_limits<double>::infinity() : c.get<double>();
            s.steps = (*paths)[i].value("steps", 0);
        }
        dm.samples.push_back(std::move(s));
    }
    return dm;
}

}  // namespace curvforge::liouville
