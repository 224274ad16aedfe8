#include "curvforge/inner/inner_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace curvforge::inner {

// ---------------------------------------------------------------- CriticalSpec

CriticalSpec::CriticalSpec(std::vector<CriticalPoint> points) {
    for (const auto& p : points) {
        if (!(std::abs(p.z) < 1.0) || !std::isfinite(p.z.real()) || !std::isfinite(p.z.imag())) {
            std::ostringstream os;
            os << "critical point " << p.z << " is not inside the unit disk";
            throw ConfigError(os.str());
        }
        if (p.multiplicity < 1) throw ConfigError("critical point multiplicity must be positive");
        auto it = std::find_if(points_.begin(), points_.end(), [&](const CriticalPoint& q) { return q.z == p.z; });
        if (it != points_.end()) {
            it->multiplicity += p.multiplicity;
        } else {
            points_.push_back(p);
        }
        total_ += p.multiplicity;
        blaschke_sum_ += p.multiplicity * (1.0 - std::abs(p.z));
    }
}

CriticalSpec CriticalSpec::from_points(const std::vector<Complex>& points) {
    std::vector<CriticalPoint> cps;
    for (Complex z : points) cps.push_back({z, 1});
    return CriticalSpec(std::move(cps));
}

std::vector<Complex> CriticalSpec::expanded() const {
    std::vector<Complex> out;
    for (const auto& p : points_) out.insert(out.end(), static_cast<std::size_t>(p.multiplicity), p.z);
    return out;
}

// ------------------------------------------------------------------ Polynomial

namespace {

std::vector<Complex> poly_mul(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    std::vector<Complex> out(a.size() + b.size() - 1, Complex{});
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

std::vector<Complex> poly_derivative(const std::vector<Complex>& a) {
    if (a.size() <= 1) return {Complex{}};
    std::vector<Complex> out(a.size() - 1);
    for (std::size_t k = 1; k < a.size(); ++k) out[k - 1] = static_cast<double>(k) * a[k];
    return out;
}

Complex horner(const std::vector<Complex>& c, Complex z) {
    Complex acc{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

}  // namespace

Polynomial Polynomial::from_roots(const std::vector<Complex>& roots) {
    std::vector<Complex> c{Complex{1.0, 0.0}};
    for (Complex r : roots) c = poly_mul(c, {-r, Complex{1.0, 0.0}});
    return Polynomial{c};
}

int Polynomial::degree() const {
    for (int k = static_cast<int>(coefficients.size()) - 1; k >= 0; --k) {
        if (coefficients[static_cast<std::size_t>(k)] != Complex{}) return k;
    }
    return -1;
}

// --------------------------------------------------------------- InnerFunction

InnerFunction::InnerFunction(FiniteBlaschke b) : factors_{std::move(b)} {
    const auto& fb = std::get<FiniteBlaschke>(factors_.front());
    if (std::abs(std::abs(fb.unimodular) - 1.0) > 1e-12) throw ConfigError("Blaschke unimodular factor must have |lambda| = 1");
    for (Complex a : fb.zeros) {
        if (!(std::abs(a) < 1.0)) throw ConfigError("Blaschke zeros must lie in the open unit disk");
    }
}

InnerFunction::InnerFunction(Polynomial p) : factors_{std::move(p)} {
    if (std::get<Polynomial>(factors_.front()).degree() < 0) throw ConfigError("h must not vanish identically");
}

InnerFunction::InnerFunction(SingularInner s) : factors_{s} {}

InnerFunction InnerFunction::product(const std::vector<InnerFunction>& parts) {
    InnerFunction out;
    out.factors_.clear();
    for (const auto& p : parts) out.factors_.insert(out.factors_.end(), p.factors_.begin(), p.factors_.end());
    if (out.factors_.empty()) out.factors_.push_back(Polynomial{{Complex{1.0, 0.0}}});
    return out;
}

bool InnerFunction::is_blaschke() const {
    return std::all_of(factors_.begin(), factors_.end(), [](const Factor& f) {
        if (std::holds_alternative<FiniteBlaschke>(f)) return true;
        // The constant 1 is the empty Blaschke product.
        if (const auto* p = std::get_if<Polynomial>(&f)) {
            return p->degree() == 0 && std::abs(std::abs(p->coefficients[0]) - 1.0) < 1e-14;
        }
        return false;
    });
}

bool InnerFunction::has_singular_factor() const {
    return std::any_of(factors_.begin(), factors_.end(),
                       [](const Factor& f) { return std::holds_alternative<SingularInner>(f); });
}

FiniteBlaschke InnerFunction::as_blaschke() const {
    if (!is_blaschke()) throw ConfigError("h = " + describe() + " is not a finite Blaschke product");
    FiniteBlaschke out;
    for (const auto& f : factors_) {
        if (const auto* b = std::get_if<FiniteBlaschke>(&f)) {
            out.zeros.insert(out.zeros.end(), b->zeros.begin(), b->zeros.end());
            out.unimodular *= b->unimodular;
        } else {
            out.unimodular *= std::get<Polynomial>(f).coefficients[0];
        }
    }
    return out;
}

namespace {

std::vector<CriticalPoint> group_points(const std::vector<Complex>& pts, double tol) {
    std::vector<CriticalPoint> out;
    for (Complex z : pts) {
        auto it = std::find_if(out.begin(), out.end(), [&](const CriticalPoint& c) { return std::abs(c.z - z) <= tol; });
        if (it != out.end()) {
            it->multiplicity += 1;
        } else {
            out.push_back({z, 1});
        }
    }
    return out;
}

}  // namespace

std::vector<CriticalPoint> InnerFunction::zeros() const {
    std::vector<Complex> all;
    for (const auto& f : factors_) {
        if (const auto* b = std::get_if<FiniteBlaschke>(&f)) {
            all.insert(all.end(), b->zeros.begin(), b->zeros.end());
        } else if (const auto* p = std::get_if<Polynomial>(&f)) {
            if (p->degree() > 0) {
                auto r = polynomial_roots(p->coefficients);
                all.insert(all.end(), r.begin(), r.end());
            }
        }
    }
    return group_points(all, 1e-7);
}

std::string InnerFunction::describe() const {
    std::ostringstream os;
    os.precision(6);
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) os << " * ";
        if (const auto* b = std::get_if<FiniteBlaschke>(&factors_[i])) {
            os << "blaschke(";
            for (std::size_t k = 0; k < b->zeros.size(); ++k) os << (k ? ", " : "") << b->zeros[k];
            os << ")";
        } else if (const auto* p = std::get_if<Polynomial>(&factors_[i])) {
            if (p->degree() == 0) {
                os << p->coefficients[0];
            } else {
                os << "poly(deg " << p->degree() << ")";
            }
        } else {
            os << "exp(-(1+z)/(1-z))";
        }
    }
    return os.str();
}

// -------------------------------------------------------------------- evaluate

namespace {

void require_disk(Complex z, const char* what) {
    if (!(std::abs(z) <= 1.0 + 1e-12)) {
        std::ostringstream os;
        os << what << " evaluated outside the closed unit disk at " << z;
        throw DomainError(os.str());
    }
}

Jet jet_mul(const Jet& a, const Jet& b) {
    return {a.value * b.value, a.d1 * b.value + a.value * b.d1, a.d2 * b.value + 2.0 * a.d1 * b.d1 + a.value * b.d2};
}

Jet factor_jet(const Factor& f, Complex z) {
    if (const auto* b = std::get_if<FiniteBlaschke>(&f)) {
        require_disk(z, "Blaschke product");
        Jet acc{b->unimodular, Complex{}, Complex{}};
        for (Complex a : b->zeros) {
            const Complex den = 1.0 - std::conj(a) * z;
            const double s = 1.0 - std::norm(a);
            acc = jet_mul(acc, {(z - a) / den, s / (den * den), 2.0 * std::conj(a) * s / (den * den * den)});
        }
        return acc;
    }
    if (const auto* p = std::get_if<Polynomial>(&f)) {
        const auto d1 = poly_derivative(p->coefficients);
        return {horner(p->coefficients, z), horner(d1, z), horner(poly_derivative(d1), z)};
    }
    if (z == Complex{1.0, 0.0}) throw DomainError("singular inner function evaluated at its atom z = 1");
    require_disk(z, "singular inner function");
    const Complex w = 1.0 - z;
    const Complex s = std::exp(-(1.0 + z) / w);
    const Complex l1 = -2.0 / (w * w);
    const Complex l2 = -4.0 / (w * w * w);
    return {s, s * l1, s * (l1 * l1 + l2)};
}

}  // namespace

Jet jet(const InnerFunction& h, Complex z) {
    Jet acc{Complex{1.0, 0.0}, Complex{}, Complex{}};
    for (const auto& f : h.factors()) acc = jet_mul(acc, factor_jet(f, z));
    return acc;
}

Complex evaluate(const InnerFunction& h, Complex z, int derivative_order) {
    const Jet j = jet(h, z);
    switch (derivative_order) {
        case 0: return j.value;
        case 1: return j.d1;
        case 2: return j.d2;
        default: throw ConfigError("derivative order must be 0, 1 or 2");
    }
}

std::pair<Complex, Complex> log_derivative(const InnerFunction& h, Complex z) {
    Complex l1{}, l2{};
    auto at_zero = [&]() {
        std::ostringstream os;
        os << "h'/h has a pole at the zero " << z << " of h";
        throw DomainError(os.str());
    };
    for (const auto& f : h.factors()) {
        if (const auto* b = std::get_if<FiniteBlaschke>(&f)) {
            require_disk(z, "Blaschke product");
            for (Complex a : b->zeros) {
                const Complex d = z - a;
                if (std::abs(d) == 0.0) at_zero();
                const Complex ca = std::conj(a);
                const Complex den = 1.0 - ca * z;
                l1 += 1.0 / d + ca / den;
                l2 += -1.0 / (d * d) + ca * ca / (den * den);
            }
        } else if (const auto* p = std::get_if<Polynomial>(&f)) {
            const Jet j = factor_jet(f, z);
            if (std::abs(j.value) == 0.0) at_zero();
            const Complex q = j.d1 / j.value;
            l1 += q;
            l2 += j.d2 / j.value - q * q;
            (void)p;
        } else {
            if (z == Complex{1.0, 0.0}) throw DomainError("singular inner function evaluated at its atom z = 1");
            const Complex w = 1.0 - z;
            l1 += -2.0 / (w * w);
            l2 += -4.0 / (w * w * w);
        }
    }
    return {l1, l2};
}

double log_modulus(const InnerFunction& h, Complex z) {
    double acc = 0.0;
    for (const auto& f : h.factors()) {
        if (const auto* b = std::get_if<FiniteBlaschke>(&f)) {
            require_disk(z, "Blaschke product");
            for (Complex a : b->zeros) acc += std::log(std::abs(z - a)) - std::log(std::abs(1.0 - std::conj(a) * z));
        } else if (std::holds_alternative<Polynomial>(f)) {
            acc += std::log(std::abs(factor_jet(f, z).value));
        } else {
            if (z == Complex{1.0, 0.0}) throw DomainError("singular inner function evaluated at its atom z = 1");
            acc += -(1.0 - std::norm(z)) / std::norm(1.0 - z);
        }
    }
    return acc;
}

// -------------------------------------------------------- Blaschke constructions

FiniteBlaschke blaschke_factor_product(const CriticalSpec& spec) {
    FiniteBlaschke b;
    for (const auto& p : spec.points()) {
        for (int m = 0; m < p.multiplicity; ++m) {
            b.zeros.push_back(p.z);
            if (p.z != Complex{}) b.unimodular *= -std::conj(p.z) / std::abs(p.z);
        }
    }
    return b;
}

InnerFunction blaschke_from_spec(const CriticalSpec& spec) {
    if (spec.empty()) return InnerFunction::one();
    return InnerFunction(blaschke_factor_product(spec));
}

std::vector<Complex> polynomial_roots(std::vector<Complex> c) {
    double scale = 0.0;
    for (Complex v : c) scale = std::max(scale, std::abs(v));
    while (!c.empty() && std::abs(c.back()) <= 1e-14 * scale) c.pop_back();
    if (c.size() <= 1) return {};
    const auto n = static_cast<Eigen::Index>(c.size() - 1);
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) comp(i, n - 1) = -c[static_cast<std::size_t>(i)] / c.back();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() != Eigen::Success) throw SolverError("companion eigenvalue iteration failed", 0, 0.0);
    std::vector<Complex> roots(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) roots[static_cast<std::size_t>(i)] = es.eigenvalues()[i];
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return roots;
}

std::vector<Complex> derivative_numerator(const FiniteBlaschke& b) {
    std::vector<Complex> p{Complex{1.0, 0.0}};
    std::vector<Complex> q{Complex{1.0, 0.0}};
    for (Complex a : b.zeros) {
        p = poly_mul(p, {-a, Complex{1.0, 0.0}});
        q = poly_mul(q, {Complex{1.0, 0.0}, -std::conj(a)});
    }
    const auto pq = poly_mul(poly_derivative(p), q);
    const auto qp = poly_mul(p, poly_derivative(q));
    std::vector<Complex> n(std::max(pq.size(), qp.size()), Complex{});
    for (std::size_t k = 0; k < pq.size(); ++k) n[k] += pq[k];
    for (std::size_t k = 0; k < qp.size(); ++k) n[k] -= qp[k];
    // The z^{2d-1} terms cancel identically.
    if (n.size() >= 2 && b.degree() >= 1) n.resize(static_cast<std::size_t>(2 * b.degree() - 1));
    return n;
}

namespace {

// Newton on the (m-1)-th derivative, the simple root of a cluster of size m.
Complex polish_cluster(const std::vector<Complex>& poly, Complex z, int m) {
    std::vector<Complex> d = poly;
    for (int k = 1; k < m; ++k) d = poly_derivative(d);
    const auto dd = poly_derivative(d);
    for (int it = 0; it < 8; ++it) {
        const Complex f = horner(d, z);
        const Complex fp = horner(dd, z);
        if (std::abs(fp) == 0.0) break;
        const Complex step = f / fp;
        const Complex next = z - step;
        if (std::abs(horner(d, next)) >= std::abs(f)) break;
        z = next;
        if (std::abs(step) < 1e-16 * (1.0 + std::abs(z))) break;
    }
    return z;
}

}  // namespace

std::vector<Complex> critical_points_of_finite_blaschke(const FiniteBlaschke& b) {
    if (b.degree() < 1) throw ConfigError("critical points need a Blaschke product of degree >= 1");
    if (b.degree() == 1) return {};
    const auto num = derivative_numerator(b);
    const auto roots = polynomial_roots(num);
    // Clusters of nearly equal roots represent one multiple root.
    const double tol = 1e-5;
    std::vector<int> label(roots.size(), -1);
    int clusters = 0;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (label[i] >= 0) continue;
        label[i] = clusters;
        for (bool grew = true; grew;) {
            grew = false;
            for (std::size_t j = 0; j < roots.size(); ++j) {
                if (label[j] >= 0) continue;
                for (std::size_t k = 0; k < roots.size(); ++k) {
                    if (label[k] == clusters && std::abs(roots[j] - roots[k]) < tol) {
                        label[j] = clusters;
                        grew = true;
                        break;
                    }
                }
            }
        }
        ++clusters;
    }
    std::vector<Complex> inside;
    double worst = 0.0;
    for (int c = 0; c < clusters; ++c) {
        Complex sum{};
        int m = 0;
        for (std::size_t i = 0; i < roots.size(); ++i) {
            if (label[i] == c) {
                sum += roots[i];
                ++m;
            }
        }
        const Complex z = polish_cluster(num, sum / static_cast<double>(m), m);
        if (std::abs(z) < 1.0) {
            inside.insert(inside.end(), static_cast<std::size_t>(m), z);
            worst = std::max(worst, std::abs(horner(num, z)));
        }
    }
    if (static_cast<int>(inside.size()) != b.degree() - 1) {
        std::ostringstream os;
        os << "found " << inside.size() << " critical points in the disk for degree " << b.degree()
           << " (expected " << b.degree() - 1 << "); worst |N| " << worst;
        throw SolverError(os.str(), 0, worst);
    }
    return inside;
}

BlaschkeConditionReport check_blaschke_condition_from_gaps(const std::vector<double>& gaps) {
    BlaschkeConditionReport r;
    for (double g : gaps) {
        if (!(g > 0.0) || g > 1.0) throw ConfigError("Blaschke gaps 1 - |z| must lie in (0, 1]");
        const double t = r.sum + g;
        r.correction += std::abs(r.sum) >= g ? (r.sum - t) + g : (g - t) + r.sum;
        r.sum = t;
    }
    r.pass = std::isfinite(r.sum);
    // For a prefix of a geometrically decaying sequence, the tail is about t q/(1-q).
    if (gaps.size() >= 3) {
        const double t1 = gaps[gaps.size() - 2];
        const double t2 = gaps.back();
        const double q = t2 / t1;
        r.tail_estimate = q < 1.0 ? t2 * q / (1.0 - q) : std::numeric_limits<double>::quiet_NaN();
    }
    return r;
}

BlaschkeConditionReport check_blaschke_condition(const std::vector<Complex>& points) {
    std::vector<double> gaps;
    for (Complex z : points) {
        if (!(std::abs(z) < 1.0)) {
            std::ostringstream os;
            os << "point " << z << " has modulus >= 1";
            throw ConfigError(os.str());
        }
        gaps.push_back(1.0 - std::abs(z));
    }
    return check_blaschke_condition_from_gaps(gaps);
}

std::pair<Complex, Complex> frostman_values(Complex f, Complex fprime, Complex alpha) {
    const Complex den = 1.0 - std::conj(alpha) * f;
    return {(f - alpha) / den, (1.0 - std::norm(alpha)) / (den * den) * fprime};
}

FiniteBlaschke frostman_shift(const FiniteBlaschke& b, Complex alpha) {
    if (!(std::abs(alpha) < 1.0)) throw ConfigError("Frostman shift needs |alpha| < 1");
    if (alpha == Complex{}) return b;
    // Zeros of B - alpha: roots of lambda P - alpha Q.
    std::vector<Complex> p{Complex{1.0, 0.0}};
    std::vector<Complex> q{Complex{1.0, 0.0}};
    for (Complex a : b.zeros) {
        p = poly_mul(p, {-a, Complex{1.0, 0.0}});
        q = poly_mul(q, {Complex{1.0, 0.0}, -std::conj(a)});
    }
    std::vector<Complex> c(p.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = b.unimodular * p[k] - alpha * q[k];
    auto roots = polynomial_roots(c);
    for (Complex& r : roots) r = polish_cluster(c, r, 1);
    FiniteBlaschke out{roots, Complex{1.0, 0.0}};
    const InnerFunction src(b);
    // Pick the reference point where the bare product is largest.
    Complex best_z{};
    double best = -1.0;
    for (Complex z : {Complex{0.0, 0.0}, Complex{0.5, 0.0}, Complex{0.0, 0.5}, Complex{-0.5, 0.0}, Complex{0.0, -0.5}}) {
        const double m = std::abs(jet(InnerFunction(out), z).value);
        if (m > best) {
            best = m;
            best_z = z;
        }
    }
    const Complex target = frostman_values(jet(src, best_z).value, Complex{}, alpha).first;
    const Complex lam = target / jet(InnerFunction(out), best_z).value;
    out.unimodular = lam / std::abs(lam);
    return out;
}

// ----------------------------------------------------------------------- JSON

namespace {

nlohmann::json cjson(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex from_cjson(const nlohmann::json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

nlohmann::json points_json(const std::vector<CriticalPoint>& pts) {
    auto arr = nlohmann::json::array();
    for (const auto& p : pts) arr.push_back({p.z.real(), p.z.imag(), p.multiplicity});
    return arr;
}

std::vector<CriticalPoint> points_from_json(const nlohmann::json& arr) {
    std::vector<CriticalPoint> pts;
    for (const auto& e : arr) {
        pts.push_back({{e.at(0).get<double>(), e.at(1).get<double>()}, e.size() > 2 ? e.at(2).get<int>() : 1});
    }
    return pts;
}

nlohmann::json factor_json(const Factor& f) {
    if (const auto* b = std::get_if<FiniteBlaschke>(&f)) {
        return {{"variant", "finite-blaschke"},
                {"zeros", points_json(group_points(b->zeros, 0.0))},
                {"unimodular", cjson(b->unimodular)}};
    }
    if (const auto* p = std::get_if<Polynomial>(&f)) {
        auto arr = nlohmann::json::array();
        for (Complex c : p->coefficients) arr.push_back(cjson(c));
        return {{"variant", "polynomial"}, {"coefficients", arr}};
    }
    return {{"variant", "singular-inner"}};
}

InnerFunction factor_from_json(const nlohmann::json& j) {
    const std::string v = j.at("variant").get<std::string>();
    if (v == "finite-blaschke") {
        FiniteBlaschke b;
        for (const auto& p : points_from_json(j.at("zeros"))) {
            b.zeros.insert(b.zeros.end(), static_cast<std::size_t>(p.multiplicity), p.z);
        }
        if (j.contains("unimodular")) b.unimodular = from_cjson(j["unimodular"]);
        return InnerFunction(b);
    }
    if (v == "polynomial") {
        Polynomial p;
        for (const auto& c : j.at("coefficients")) p.coefficients.push_back(from_cjson(c));
        return InnerFunction(p);
    }
    if (v == "singular-inner") return InnerFunction(SingularInner{});
    throw ConfigError("unknown inner-function variant '" + v + "'");
}

}  // namespace

nlohmann::json to_json(const InnerFunction& h) {
    if (!h.is_product()) return factor_json(h.factors().front());
    auto arr = nlohmann::json::array();
    for (const auto& f : h.factors()) arr.push_back(factor_json(f));
    return {{"variant", "product"}, {"factors", arr}};
}

InnerFunction inner_from_json(const nlohmann::json& j) {
    try {
        if (j.at("variant") == "product") {
            std::vector<InnerFunction> parts;
            for (const auto& f : j.at("factors")) parts.push_back(factor_from_json(f));
            return InnerFunction::product(parts);
        }
        return factor_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed inner function: ") + e.what());
    }
}

nlohmann::json to_json(const CriticalSpec& spec) {
    return {{"points", points_json(spec.points())}, {"total_multiplicity", spec.total_multiplicity()},
            {"blaschke_sum", spec.blaschke_sum()}};
}

CriticalSpec spec_from_json(const nlohmann::json& j) {
    try {
        return CriticalSpec(points_from_json(j.is_array() ? j : j.at("points")));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed critical spec: ") + e.what());
    }
}

// -------------------------------------------------------------------- parsing

namespace {

std::string strip(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    }
    return out;
}

double to_double(const std::string& s, const std::string& whole) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("cannot parse complex number '" + whole + "'");
    }
    if (used != s.size()) throw ConfigError("cannot parse complex number '" + whole + "'");
    return v;
}

}  // namespace

Complex parse_complex(const std::string& text) {
    const std::string s = strip(text);
    if (s.empty()) throw ConfigError("empty complex number");
    if (s.back() != 'i' && s.back() != 'j') return {to_double(s, text), 0.0};
    const std::string body = s.substr(0, s.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return {0.0, to_double(body, text)};
    return {to_double(body.substr(0, split), text), to_double(body.substr(split), text)};
}

CriticalSpec parse_spec(const std::string& text) {
    const std::string s = strip(text);
    std::vector<CriticalPoint> pts;
    if (s.empty() || s == "{}" || s == "[]") return CriticalSpec{};
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        int mult = 1;
        const auto caret = tok.find('^');
        if (caret != std::string::npos) {
            mult = static_cast<int>(to_double(tok.substr(caret + 1), text));
            tok = tok.substr(0, caret);
        }
        pts.push_back({parse_complex(tok), mult});
    }
    return CriticalSpec(pts);
}

InnerFunction parse_inner(const std::string& text) {
    const std::string s = strip(text);
    if (s.empty()) throw ConfigError("empty h specification");
    const auto star = s.find('*');
    if (star != std::string::npos) {
        return InnerFunction::product({parse_inner(s.substr(0, star)), parse_inner(s.substr(star + 1))});
    }
    if (s == "one" || s == "1") return InnerFunction::one();
    if (s == "z") return InnerFunction::identity();
    if (s == "singular") return InnerFunction(SingularInner{});
    const auto colon = s.find(':');
    const std::string head = s.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : s.substr(colon + 1);
    if (head == "blaschke") return blaschke_from_spec(parse_spec(rest));
    if (head == "poly") {
        std::vector<Complex> roots;
        std::stringstream ss(rest);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            int mult = 1;
            const auto caret = tok.find('^');
            if (caret != std::string::npos) {
                mult = static_cast<int>(to_double(tok.substr(caret + 1), text));
                tok = tok.substr(0, caret);
            }
            roots.insert(roots.end(), static_cast<std::size_t>(mult), parse_complex(tok));
        }
        return InnerFunction(Polynomial::from_roots(roots));
    }
    throw ConfigError("cannot parse h '" + text + "' (expected one, z, singular, blaschke:<points>, poly:<roots>)");
}

}  // namespace curvforge::inner
