#pragma once

#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "curvforge/common.hpp"

namespace curvforge::inner {

struct CriticalPoint {
    Complex z;
    int multiplicity = 1;
};

/// Finite multiset of points in the open unit disk.
class CriticalSpec {
public:
    CriticalSpec() = default;
    /// Merges repeated points; throws ConfigError for |z| >= 1 or multiplicity < 1.
    explicit CriticalSpec(std::vector<CriticalPoint> points);
    /// One entry per listed point; repeats raise multiplicity.
    static CriticalSpec from_points(const std::vector<Complex>& points);

    const std::vector<CriticalPoint>& points() const noexcept { return points_; }
    int total_multiplicity() const noexcept { return total_; }
    /// Sum of multiplicity * (1 - |z|).
    double blaschke_sum() const noexcept { return blaschke_sum_; }
    /// Points repeated by multiplicity.
    std::vector<Complex> expanded() const;
    bool empty() const noexcept { return points_.empty(); }

private:
    std::vector<CriticalPoint> points_;
    int total_ = 0;
    double blaschke_sum_ = 0.0;
};

/// lambda * prod (z - a_j) / (1 - conj(a_j) z); zeros listed with repetition.
struct FiniteBlaschke {
    std::vector<Complex> zeros;
    Complex unimodular{1.0, 0.0};

    int degree() const noexcept { return static_cast<int>(zeros.size()); }
};

/// sum c_k z^k, coefficients in ascending order.
struct Polynomial {
    std::vector<Complex> coefficients;

    static Polynomial from_roots(const std::vector<Complex>& roots);
    int degree() const;
};

/// The atom exp(-(1+z)/(1-z)).
struct SingularInner {};

using Factor = std::variant<FiniteBlaschke, Polynomial, SingularInner>;

/// The holomorphic factor h: one of the variants or a flat product of them.
class InnerFunction {
public:
    InnerFunction() : factors_{Polynomial{{Complex{1.0, 0.0}}}} {}
    InnerFunction(FiniteBlaschke b);
    InnerFunction(Polynomial p);
    InnerFunction(SingularInner s);
    /// Flattens nested products.
    static InnerFunction product(const std::vector<InnerFunction>& parts);

    static InnerFunction one() { return InnerFunction(); }
    static InnerFunction identity() { return InnerFunction(FiniteBlaschke{{Complex{}}, Complex{1.0, 0.0}}); }

    const std::vector<Factor>& factors() const noexcept { return factors_; }
    bool is_product() const noexcept { return factors_.size() > 1; }
    /// True when every factor is a finite Blaschke product.
    bool is_blaschke() const;
    bool has_singular_factor() const;
    /// Single FiniteBlaschke equivalent (throws ConfigError when not Blaschke).
    FiniteBlaschke as_blaschke() const;

    /// Zeros inside the unit disk with multiplicity (polynomial roots found numerically).
    std::vector<CriticalPoint> zeros() const;

    std::string describe() const;

private:
    std::vector<Factor> factors_;
};

struct Jet {
    Complex value;
    Complex d1;
    Complex d2;
};

/// h, h', h'' by exact product and chain rules. Throws DomainError at z = 1
/// for a singular factor and for |z| >= 1 with Blaschke or singular factors.
Jet jet(const InnerFunction& h, Complex z);
Complex evaluate(const InnerFunction& h, Complex z, int derivative_order);

/// (h'/h, (h'/h)'), summed factorwise; DomainError at a zero of h.
std::pair<Complex, Complex> log_derivative(const InnerFunction& h, Complex z);
/// log|h(z)|, -inf at zeros.
double log_modulus(const InnerFunction& h, Complex z);

/// The origin convention: a zero at 0 contributes the factor z itself.
InnerFunction blaschke_from_spec(const CriticalSpec& spec);
FiniteBlaschke blaschke_factor_product(const CriticalSpec& spec);

/// The d-1 critical points in the disk (repeated by multiplicity).
std::vector<Complex> critical_points_of_finite_blaschke(const FiniteBlaschke& b);

/// Coefficients (ascending) of P'Q - PQ' where B = lambda P/Q.
std::vector<Complex> derivative_numerator(const FiniteBlaschke& b);

struct BlaschkeConditionReport {
    double sum = 0.0;
    /// Rounding error of `sum` (Neumaier compensation): the partial sum is sum + correction.
    double correction = 0.0;
    bool pass = true;
    /// Geometric extrapolation of the omitted tail from the last terms; NaN when
    /// the terms do not decay geometrically.
    double tail_estimate = 0.0;
};
BlaschkeConditionReport check_blaschke_condition(const std::vector<Complex>& points);
/// Same check from the gaps 1 - |z_j| (for points closer to the circle than a double resolves).
BlaschkeConditionReport check_blaschke_condition_from_gaps(const std::vector<double>& gaps);

/// (B - alpha)/(1 - conj(alpha) B) as a finite Blaschke product of the same degree.
FiniteBlaschke frostman_shift(const FiniteBlaschke& b, Complex alpha);
/// Shifted value and derivative for a sampled map.
std::pair<Complex, Complex> frostman_values(Complex f, Complex fprime, Complex alpha);

/// Roots of sum c_k z^k by companion-matrix eigenvalues, trailing near-zero
/// leading coefficients trimmed.
std::vector<Complex> polynomial_roots(std::vector<Complex> coefficients);

nlohmann::json to_json(const InnerFunction& h);
InnerFunction inner_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CriticalSpec& spec);
CriticalSpec spec_from_json(const nlohmann::json& j);

/// Parses "0.3, -0.2+0.1i, 0.2^2" (^m sets multiplicity).
CriticalSpec parse_spec(const std::string& text);
/// Parses "one", "z", "blaschke:<spec>", "poly:<roots spec>", "singular".
InnerFunction parse_inner(const std::string& text);
Complex parse_complex(const std::string& text);

}  // namespace curvforge::inner
