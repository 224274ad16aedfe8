#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "curvforge/curvature/solver.hpp"
#include "curvforge/inner/inner_function.hpp"

namespace curvforge::liouville {

/// u with its Wirtinger derivatives at a point. Closed-form sources may also
/// carry d/dz d/dzbar u and its d/dz, which give an exact holomorphy residual.
struct Wirtinger {
    double u = 0.0;
    Complex uz{};
    Complex uzz{};
    std::optional<Complex> uzzbar;
    std::optional<Complex> uzzbar_z;
};

/// f, f', f'', f''' at a point.
using MapJet = std::array<Complex, 4>;

/// Uniform access to u, du/dz, d2u/dz2, either from formulas or from a solved field.
class AnalyticSource {
public:
    using Function = std::function<Wirtinger(Complex)>;

    static AnalyticSource closed_form(std::string name, numerics::DomainDescriptor domain, Function fn);
    /// log(1/(1-|z|^2)) on the disk.
    static AnalyticSource hyperbolic();
    /// log(2/(1-|z|^4)) on the disk, the metric of z^2 with h = z.
    static AnalyticSource one_critical();
    /// u = log(|f'| / ((1-|f|^2) |h|)) for a holomorphic f with known derivatives.
    static AnalyticSource from_map(std::string name, numerics::DomainDescriptor domain,
                                   std::function<MapJet(Complex)> f, inner::InnerFunction h);
    /// Fourth-order Wirtinger stencils at the nodes, bicubic interpolation in between.
    static AnalyticSource grid_backed(const curvature::MetricField& m);

    /// Throws DomainError within clearance() of the boundary or zero_clearance() of a zero of h.
    Wirtinger evaluate(Complex z) const;

    bool is_grid_backed() const noexcept;
    const std::string& name() const noexcept;
    const numerics::DomainDescriptor& domain() const noexcept;
    double clearance() const noexcept;
    double zero_clearance() const noexcept;
    /// Grid-backed only: the underlying field and nodal derivative fields (NaN where no stencil fits).
    const curvature::MetricField& field() const;
    const numerics::ComplexField& nodal_uz() const;
    const numerics::ComplexField& nodal_uzz() const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

/// B_u = u_zz - u_z^2 - (h'/h) u_z. DomainError at zeros of h.
Complex compute_Bu(const AnalyticSource& src, const inner::InnerFunction& h, Complex z);
/// A_u = B_u + (h'/h)'/2 - (h'/h)^2/4; equals S_f / 2 for the developing map f.
Complex compute_Au(const AnalyticSource& src, const inner::InnerFunction& h, Complex z);
Complex compute_Au(const Wirtinger& w, const inner::InnerFunction& h, Complex z);

struct HolomorphyOptions {
    double boundary_cells = 5.0;  // skip nodes closer than this many spacings to the boundary
    double zero_cells = 5.0;      // ... or to a zero of h
    /// When set, only nodes with |z - center| <= core_radius are measured.
    std::optional<double> core_radius;
    Complex center{};
    /// Band widths are counted in this spacing instead of the grid's. A refinement
    /// study passes its coarsest spacing so that every level measures the same set.
    std::optional<double> reference_spacing;
};

struct HolomorphyReport {
    numerics::ScalarField residual;  // |dA/dzbar| per node, NaN outside the measured set
    double norm = 0.0;
    Complex worst{};
    std::size_t nodes = 0;
};

/// Central-difference dA_u/dzbar at the nodes of the source's grid (or of `grid`
/// supplied for closed-form sources, where the exact identity is used when available).
HolomorphyReport holomorphy_residual(const AnalyticSource& src, const inner::InnerFunction& h,
                                     const HolomorphyOptions& options = {});
HolomorphyReport holomorphy_residual(const AnalyticSource& src, const inner::InnerFunction& h,
                                     const numerics::GridPtr& grid, const HolomorphyOptions& options = {});

struct LaurentReport {
    Complex b0{};
    Complex b1{};
    int order = 0;          // multiplicity of z0 as a zero of h
    double expected_b0 = 0; // (1 - (order+1)^2) / 4
    std::array<Complex, 2> indicial{};
};

/// b0 = (1/2 pi i) \oint (z - z0) A(z) dz on |z - z0| = radius, trapezoidal rule.
Complex laurent_coefficient(const std::function<Complex(Complex)>& a, Complex z0, double radius, int power,
                            int nodes = 64);
/// Validates the contour against the domain and the other zeros of h, then
/// extracts b0 and b1 with 64 nodes.
LaurentReport laurent_b0(const AnalyticSource& src, const inner::InnerFunction& h, Complex z0, double radius);
/// Roots of r (r - 1) + b0 = 0, larger real part first.
std::array<Complex, 2> indicial_roots(Complex b0);

struct DevelopOptions {
    double pole_margin = 0.05;
    double rtol = 1e-10;
    double atol = 1e-14;
    int max_steps = 200000;
    /// +1 / -1 forces the detour side around zeros of h; 0 picks the side away from the pole.
    int detour_side = 0;
};

struct DevelopSample {
    Complex z{};
    Complex f{};
    Complex fprime{};
    std::vector<Complex> path;
    double clearance = 0.0;  // min distance of the path to a zero of h
    int steps = 0;
};

struct DevelopingMap {
    Complex base{};
    double u1_base = 0.0;   // u1 = u + log|h| at the base point
    Complex du1_base{};     // d u1 / dz at the base point
    std::vector<DevelopSample> samples;
};

/// Integrates y'' + A_u y = 0 for y1 (y1 = 0, y1' = e^{u1}) and y2 (y2 = 1, y2' = -du1/dz)
/// from z0 along polylines avoiding zeros of h, and returns f = y1/y2 and
/// f' = (y1' y2 - y1 y2') / y2^2 at each target.
DevelopingMap develop(const AnalyticSource& src, const inner::InnerFunction& h, Complex z0,
                      const std::vector<Complex>& targets, const DevelopOptions& options = {});

/// Polyline from a to b keeping `margin` away from every pole and `boundary_clearance`
/// inside the domain. Throws DomainError when no such path is found.
std::vector<Complex> plan_path(const numerics::DomainDescriptor& domain, double boundary_clearance,
                               const std::vector<Complex>& poles, Complex a, Complex b, double margin,
                               int side = 0);

/// max |u - log(|f'| / ((1 - |f|^2) |h|))| over the samples.
double verify_representation(const DevelopingMap& dm, const inner::InnerFunction& h, const AnalyticSource& src);

/// e^{i theta} (z - a) / (1 - conj(a) z) fitted from three sample pairs.
struct MobiusFit {
    bool ok = false;
    double theta = 0.0;
    Complex a{};
    std::array<Complex, 4> coefficients{};  // (p z + q) / (r z + s)
    double fit_residual = 0.0;        // max over check points of |f - T(g)|
    double boundary_deviation = 0.0;  // max | |T(e^{it})| - 1 | on three test points
    std::size_t worst_index = 0;
    std::string message;

    Complex apply(Complex z) const;
};

/// Fits T with f = T(g) on `fit` (three indices; empty picks well separated ones)
/// and checks the remaining samples. ok is false on mismatch, never throws for it.
MobiusFit mobius_fit(const std::vector<Complex>& f, const std::vector<Complex>& g, std::vector<std::size_t> fit = {},
                     double tol = 1e-6);

/// (f - alpha) / (1 - conj(alpha) f) applied to every sample.
DevelopingMap frostman_shift(const DevelopingMap& dm, Complex alpha);

struct CriticalRecovery {
    Complex fprime_at_zero{};
    double local_scale = 0.0;  // max |f'| on the sampling circle
};

/// f'(zj) from the mean of f' on the circle of radius 2 * pole_margin around zj.
CriticalRecovery recover_critical_derivative(const AnalyticSource& src, const inner::InnerFunction& h, Complex z0,
                                             Complex zj, const DevelopOptions& options = {}, int nodes = 32);

nlohmann::json to_json(const DevelopingMap& dm, std::optional<double> repr_error = std::nullopt);
DevelopingMap developing_map_from_json(const nlohmann::json& j);

}  // namespace curvforge::liouville
