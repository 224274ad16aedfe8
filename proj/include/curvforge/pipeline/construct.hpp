#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "curvforge/curvature/solver.hpp"
#include "curvforge/inner/inner_function.hpp"
#include "curvforge/liouville/developing_map.hpp"

namespace curvforge::pipeline {

/// Minimum-cost perfect matching on a square cost matrix (Hungarian method).
/// Returns assignment[row] = column.
std::vector<int> optimal_assignment(const std::vector<std::vector<double>>& cost);

/// |computed[assignment[i]] - requested[i]| under the optimal assignment.
/// Sizes must agree (ConfigError otherwise).
std::vector<double> matched_residuals(const std::vector<Complex>& requested, const std::vector<Complex>& computed);

struct ProfileSample {
    double angle = 0.0;
    double value = 0.0;   // |f'| / (1 - |f|^2)
    double target = 0.0;  // phi at the matching boundary point, NaN when not applicable
};

struct Diagnostics {
    double repr_error = 0.0;
    std::vector<double> critical_residuals;
    std::vector<ProfileSample> boundary_profile;
    double profile_radius = 0.0;
    double profile_error = 0.0;   // max |value - target| over the profile
    double sup_density = 0.0;     // sup over grid nodes of |f'| / (1 - |f|^2), through e^u |h|
    double fit_residual = 0.0;    // max |f - fitted| over the samples
    double conjugate_error = 0.0; // outer-factor path only: max |g - closed form| when one is supplied
};

struct ConstructionResult {
    inner::CriticalSpec spec;
    liouville::DevelopingMap f;
    std::optional<inner::FiniteBlaschke> fitted;
    int degree = 0;  // 0 when f is not fitted by a finite Blaschke product
    Diagnostics diagnostics;
    curvature::SolveReport solve;
};

struct ConstructOptions {
    int resolution = 257;
    std::vector<double> schedule = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    /// Dense targets: polar rings up to this radius (clamped to 1 - 5 spacings).
    double sample_radius = 0.95;
    int rings = 24;
    int angles = 48;
    liouville::DevelopOptions develop;
    /// Newton polish of the zeros of f: stop when |f| below this.
    double zero_tol = 1e-11;
    /// A polished zero is accepted when |f| ends below this (limited by the field error).
    double zero_accept = 1e-4;
};

/// Finite critical set: blow-up metric for h = B, developing map, zeros of f,
/// and the fitted finite Blaschke product. PipelineError tags the failing stage.
ConstructionResult construct_blaschke(const inner::CriticalSpec& spec, const ConstructOptions& options = {});

struct OracleOptions {
    std::optional<std::vector<Complex>> seed;  // n + 1 zeros; the first is pinned to 0
    int max_iterations = 60;
    int homotopy_steps = 20;
    double tolerance = 1e-10;
};

struct OracleResult {
    inner::FiniteBlaschke blaschke;
    double residual = 0.0;  // max |e_k| of the matched critical clusters
    int iterations = 0;
    bool used_homotopy = false;
};

/// Brute-force inverse of zeros -> critical points with one zero pinned at 0.
/// Throws SolverError when Newton and the homotopy both fail.
OracleResult invert_critical_map(const inner::CriticalSpec& spec, const OracleOptions& options = {});

using BoundaryModulus = std::function<double(Complex)>;

/// Boundary modulus phi: h = monic polynomial with the spec's roots, Dirichlet data log(phi / |p|).
/// Disk or rectangle; annulus and a root of p on the boundary are rejected.
ConstructionResult construct_with_boundary_modulus(const inner::CriticalSpec& spec, const BoundaryModulus& phi,
                                                   const numerics::DomainDescriptor& domain,
                                                   const ConstructOptions& options = {});

/// Outer-factor variant on the disk: v harmonic with boundary log phi, g = exp(v + i v~), h = B g,
/// mu = e^u with mu = 1 on the circle. `closed_form_g` (optional) is compared with the
/// grid conjugate for diagnostics.
ConstructionResult construct_with_ae_boundary_modulus(const inner::CriticalSpec& spec, const BoundaryModulus& phi,
                                                      const ConstructOptions& options = {},
                                                      std::function<Complex(Complex)> closed_form_g = {});

/// Conjugate harmonic function of v on its grid, normalized to 0 at the node nearest `anchor`.
/// Integrates the Cauchy-Riemann gradient along the column through the anchor and then along rows.
numerics::ScalarField conjugate_harmonic(const numerics::ScalarField& v, Complex anchor = {});

struct EquivalenceVerdict {
    bool equivalent = false;
    liouville::MobiusFit fit;
    double tolerance = 0.0;
};

/// mobius_fit of r1's samples against values of the second map at the same points.
EquivalenceVerdict equivalence_up_to_automorphism(const ConstructionResult& r1, const ConstructionResult& r2,
                                                  double tol = 1e-4);
EquivalenceVerdict equivalence_up_to_automorphism(const ConstructionResult& r, const inner::FiniteBlaschke& b,
                                                  double tol = 1e-4);

/// min over |z| = r of e^u = |f'| / ((1 - |f|^2) |h|), evaluated on the fitted product.
double boundary_density_min(const inner::FiniteBlaschke& f, const inner::InnerFunction& h, double r,
                            int nodes = 256);

/// Values of a finite Blaschke product.
Complex blaschke_value(const inner::FiniteBlaschke& b, Complex z);

nlohmann::json to_json(const ConstructionResult& r);

}  // namespace curvforge::pipeline
