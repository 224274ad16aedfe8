#pragma once

#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "curvforge/inner/inner_function.hpp"
#include "curvforge/numerics/linear_solve.hpp"

namespace curvforge::curvature {

using numerics::BoundaryFunction;
using numerics::GridPtr;
using numerics::ScalarField;

enum class BoundaryKind { Dirichlet, Blowup };

/// u on a grid together with its h, representing the metric e^u |dz|.
/// The curvature is -4 |h|^2, or -4 |h|^2 e^{2 v} when `log_outer` holds v.
struct MetricField {
    ScalarField u;
    inner::InnerFunction h;
    BoundaryFunction boundary;
    BoundaryKind kind = BoundaryKind::Dirichlet;
    double level = 0.0;  // blow-up level reached
    std::optional<ScalarField> log_outer;

    const numerics::DomainGrid& grid() const { return u.grid(); }
    const GridPtr& grid_ptr() const { return u.grid_ptr(); }
};

/// 2 log|h| (+ 2 v) per node; -inf at zeros of h.
std::vector<double> log_weight(const MetricField& m);
std::vector<double> log_weight(const numerics::DomainGrid& grid, const inner::InnerFunction& h,
                               const ScalarField* log_outer);

enum class InitialGuess { HarmonicExtension, ConstantMinBoundary };

/// Reciprocal: Newton on the curvature form in w = e^{-u}, falling back to
/// Logarithmic when it stalls. Logarithmic: Newton on Delta u - 4|h|^2 e^{2u}
/// from the harmonic extension (a discrete supersolution).
enum class Formulation { Reciprocal, Logarithmic };

struct BoundsReport {
    bool checked = false;
    /// min over nodes of 1 - |h| e^u (1 - |z|^2): the metric |h| e^u stays below the hyperbolic one.
    double ahlfors_margin = 0.0;
    /// min over nodes with |h| > 1e-12 of log(1/(1-|z|^2)) - log|h| - u.
    double upper_margin = 0.0;
    Complex upper_worst{};
    bool lower_checked = false;
    /// min of u - log(R/(R^2 - |z|^2)), the radius-R hyperbolic density with the level's boundary value.
    double lower_margin = 0.0;
    Complex lower_worst{};
    double tolerance = 0.0;
    bool pass = true;
};

struct LevelRecord {
    double n = 0.0;
    double delta = 0.0;  // max |u_n - u_prev| on the core region
    int newton_iterations = 0;
    double residual = 0.0;
    BoundsReport bounds;
};

struct SolveReport {
    int newton_iterations = 0;
    double final_residual = 0.0;
    int damping_events = 0;
    /// Solves that fell back from the w = e^{-u} iteration to Newton on u itself.
    int fallback_solves = 0;
    Formulation formulation = Formulation::Reciprocal;
    BoundsReport bounds;
    std::vector<LevelRecord> blowup_levels;
    bool converged = false;
};

struct DirichletOptions {
    /// Curvature-form residual |w L w - |grad w|^2 + 4 |h|^2 e^{2v}| / s_k with w = e^{-u}.
    double tolerance = 1e-8;
    int max_iterations = 50;
    int max_halvings = 20;
    double max_boundary = 12.0;
    InitialGuess initial_guess = InitialGuess::HarmonicExtension;
    Formulation formulation = Formulation::Reciprocal;
    std::optional<ScalarField> warm_start;
    std::optional<ScalarField> log_outer;
    numerics::LinearSolveOptions linear;
};

struct BlowupOptions {
    std::vector<double> schedule = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    double stop_tol = 1e-4;
    /// Nodewise tolerance for u_{n+1} >= u_n.
    double monotonicity_tol = 1e-7;
    DirichletOptions dirichlet;
};

/// Damped Newton for Delta u = 4 |h|^2 e^{2u}, u = boundary on the boundary.
/// Throws SolverError on stagnation or when the boundary data exceed max_boundary.
std::pair<MetricField, SolveReport> solve_dirichlet(GridPtr grid, const inner::InnerFunction& h,
                                                    const BoundaryFunction& boundary,
                                                    const DirichletOptions& options = {});

/// Levels n of the schedule with warm starts; stops once the core change drops below stop_tol.
/// If any level needs the logarithmic fallback, the schedule is rerun in that
/// formulation so consecutive levels share one discretization.
/// Throws VerificationError when a level decreases u by more than monotonicity_tol.
std::pair<MetricField, SolveReport> solve_blowup(GridPtr grid, const inner::InnerFunction& h,
                                                 const BlowupOptions& options = {});

/// Delta u - 4|h|^2 e^{2u} with the discrete Laplacian. Rows whose cut legs
/// see non-finite boundary data are NaN.
ScalarField residual(const MetricField& m);
/// Max |residual| over regular (all legs interior) nodes passing `keep`.
double regular_residual_norm(const ScalarField& r, const std::function<bool(Complex)>& keep);

struct ComparisonReport {
    double worst_margin = 0.0;  // min of u2 - u1
    Complex worst_point{};
    bool pass = true;
};

/// Asserts u1 <= u2 + tol at every node; throws VerificationError otherwise.
ComparisonReport check_comparison(const MetricField& u1, const MetricField& u2, double tol = 1e-7);

/// Disk bounds; the lower (Yau-direction) bound is checked for blow-up fields with Blaschke h.
/// Throws VerificationError on a violation beyond tol.
BoundsReport check_bounds(const MetricField& m, double tol);
BoundsReport bounds_margins(const MetricField& m, double tol);
double default_bound_tolerance(const numerics::DomainGrid& grid);

/// Radius R with R/(R^2 - 1) = e^n: the hyperbolic disk of radius R has density e^n on |z| = 1.
double level_radius(double n);

/// |u - (H + v)| on |z| <= 0.5 with H the harmonic extension of the boundary
/// data and v the Green potential of 4|h|^2 e^{2u}. Disk Dirichlet fields only.
double check_green_representation(const MetricField& m);

/// A closed-form field sampled on the grid (boundary used by residual rows).
MetricField sample_metric(GridPtr grid, const inner::InnerFunction& h, const std::function<double(Complex)>& u,
                          BoundaryFunction boundary = {});

nlohmann::json to_json(const SolveReport& report);

}  // namespace curvforge::curvature
