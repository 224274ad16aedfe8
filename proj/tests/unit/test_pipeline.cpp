#include <cmath>
#include <random>

#include "doctest.h"

#include "curvforge/pipeline/construct.hpp"

using namespace curvforge;
using namespace curvforge::pipeline;
using inner::CriticalSpec;
using inner::FiniteBlaschke;

namespace {

double worst(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
}

double forward_residual(const CriticalSpec& spec, const FiniteBlaschke& b) {
    return worst(matched_residuals(spec.expanded(), inner::critical_points_of_finite_blaschke(b)));
}

}  // namespace

TEST_CASE("optimal assignment") {
    const std::vector<std::vector<double>> cost{{4, 1, 3}, {2, 0, 5}, {3, 2, 2}};
    const auto a = optimal_assignment(cost);
    CHECK(cost[0][a[0]] + cost[1][a[1]] + cost[2][a[2]] == 5.0);
    CHECK(a == std::vector<int>{1, 0, 2});
    const auto r = matched_residuals({{0.1, 0.0}, {-0.5, 0.2}}, {{-0.5, 0.2}, {0.1, 1e-9}});
    CHECK(r[0] == doctest::Approx(1e-9));
    CHECK(r[1] == 0.0);
    CHECK_THROWS_AS(matched_residuals({{0.0, 0.0}}, {}), ConfigError);
}

TEST_CASE("oracle inverts the critical-point map") {
    SUBCASE("spec {0}") {
        const auto o = invert_critical_map(CriticalSpec::from_points({{0.0, 0.0}}));
        REQUIRE(o.blaschke.zeros.size() == 2);
        CHECK(std::abs(o.blaschke.zeros[1]) < 1e-10);
    }
    SUBCASE("spec {0.3}") {
        const auto spec = CriticalSpec::from_points({{0.3, 0.0}});
        const auto o = invert_critical_map(spec);
        // tau_0.3 squared, renormalized to vanish at 0: the second zero is 0.6 / 1.09.
        CHECK(std::abs(o.blaschke.zeros[1] - 0.55045871559633) < 1e-10);
        CHECK(forward_residual(spec, o.blaschke) < 1e-10);
    }
    SUBCASE("symmetric pair and a double point") {
        for (const char* text : {"0.4, -0.4", "0.2^2, -0.3i", "0.3, -0.2+0.1i, 0.1+0.5i", "0.5, -0.5, 0.5i, -0.1-0.4i"}) {
            const auto spec = inner::parse_spec(text);
            const auto o = invert_critical_map(spec);
            CHECK(o.residual <= 1e-10);
            CHECK(o.blaschke.degree() == spec.total_multiplicity() + 1);
            CHECK(forward_residual(spec, o.blaschke) <= 1e-8);
        }
    }
    SUBCASE("automorphisms leave the critical set unchanged") {
        const auto spec = inner::parse_spec("0.3, -0.2+0.1i");
        const auto o = invert_critical_map(spec);
        std::mt19937 rng(4);
        std::uniform_real_distribution<double> c(-0.6, 0.6);
        for (int k = 0; k < 5; ++k) {
            const auto shifted = inner::frostman_shift(o.blaschke, {c(rng), c(rng)});
            CHECK(forward_residual(spec, shifted) <= 1e-8);
        }
    }
    CHECK_THROWS_AS(invert_critical_map(CriticalSpec::from_points(std::vector<Complex>(13, {0.1, 0.0}))), ConfigError);
}

TEST_CASE("construct_blaschke at resolution 129") {
    ConstructOptions opt;
    opt.resolution = 129;
    SUBCASE("spec {0.3}") {
        const auto spec = CriticalSpec::from_points({{0.3, 0.0}});
        const auto r = construct_blaschke(spec, opt);
        REQUIRE(r.fitted);
        CHECK(r.degree == 2);
        CHECK(worst(r.diagnostics.critical_residuals) < 1e-3);
        CHECK(r.diagnostics.fit_residual < 1e-3);
        const auto o = invert_critical_map(spec);
        CHECK(equivalence_up_to_automorphism(r, o.blaschke, 1e-3).equivalent);
        // e^u grows toward the circle.
        const auto h = inner::blaschke_from_spec(spec);
        const double a = boundary_density_min(*r.fitted, h, 0.9);
        const double b = boundary_density_min(*r.fitted, h, 0.95);
        const double c = boundary_density_min(*r.fitted, h, 0.99);
        CHECK(a < b);
        CHECK(b < c);
        CHECK(c > 40.0);

        const auto j = to_json(r);
        CHECK(j["degree"] == 2);
        CHECK(j["zeros"].size() == 2);
        CHECK(j["diagnostics"].contains("critical_residuals"));
        CHECK(j["diagnostics"].contains("boundary_profile"));
    }
    SUBCASE("spec {0}") {
        const auto r = construct_blaschke(CriticalSpec::from_points({{0.0, 0.0}}), opt);
        CHECK(r.degree == 2);
        CHECK(equivalence_up_to_automorphism(r, FiniteBlaschke{{Complex{}, Complex{}}, Complex{1.0, 0.0}}, 1e-3).equivalent);
    }
    CHECK_THROWS_AS(construct_blaschke(CriticalSpec::from_points({{0.97, 0.0}}), opt), ConfigError);
}

TEST_CASE("boundary-modulus constructions") {
    ConstructOptions opt;
    opt.resolution = 129;
    const auto spec0 = CriticalSpec::from_points({{0.0, 0.0}});
    auto one = [](Complex) { return 1.0; };
    const auto r22 = construct_with_boundary_modulus(spec0, one, numerics::DomainDescriptor::unit_disk(), opt);
    CHECK(r22.diagnostics.boundary_profile.size() == 64);
    // Sampling at 1 - 3 spacings leaves an O(spacing) gap; 5e-2 is reached at 257.
    CHECK(r22.diagnostics.profile_error < 0.1);
    CHECK(r22.degree == 0);
    CHECK(std::isfinite(r22.diagnostics.sup_density));

    const auto r23 = construct_with_ae_boundary_modulus(spec0, one, opt);
    for (std::size_t k = 0; k < r22.diagnostics.boundary_profile.size(); ++k) {
        CHECK(std::abs(r22.diagnostics.boundary_profile[k].value - r23.diagnostics.boundary_profile[k].value) < 5e-2);
    }

    // |2 + xi|: the profile approaches phi at first order in the spacing.
    auto phi = [](Complex xi) { return std::abs(2.0 + xi); };
    ConstructOptions coarse = opt;
    coarse.resolution = 65;
    const auto rc = construct_with_ae_boundary_modulus(CriticalSpec{}, phi, coarse, [](Complex z) { return 2.0 + z; });
    const auto r = construct_with_ae_boundary_modulus(CriticalSpec{}, phi, opt, [](Complex z) { return 2.0 + z; });
    CHECK(rc.diagnostics.profile_error / r.diagnostics.profile_error > 1.5);
    CHECK(r.diagnostics.conjugate_error < 1e-3);
    CHECK(r.diagnostics.repr_error < 1e-3);
    CHECK(std::isfinite(r.diagnostics.sup_density));
    CHECK(r.diagnostics.sup_density < 3.0 + 1e-2);

    const auto rect = construct_with_boundary_modulus(spec0, one,
        numerics::DomainDescriptor::rectangle({-1.0, -0.8}, {1.0, 0.8}), opt);
    CHECK(rect.diagnostics.boundary_profile.size() == 64);
    CHECK(rect.diagnostics.repr_error < 5e-2);

    CHECK_THROWS_AS(construct_with_boundary_modulus(spec0, one, numerics::DomainDescriptor::annulus(0.25, 0.5), opt),
                    DomainError);
    CHECK_THROWS_AS(construct_with_boundary_modulus(CriticalSpec::from_points({{0.0, -0.8}}), one,
                                                    numerics::DomainDescriptor::rectangle({-1.0, -0.8}, {1.0, 0.8}), opt),
                    ConfigError);
    CHECK_THROWS_AS(construct_with_boundary_modulus(spec0, [](Complex) { return 0.0; },
                                                    numerics::DomainDescriptor::unit_disk(), opt),
                    ConfigError);
}

TEST_CASE("conjugate harmonic of Re z^2 + Re z") {
    auto g = numerics::build_grid(numerics::DomainDescriptor::unit_disk(), 65);
    const auto v = numerics::ScalarField::sample(g, [](Complex z) { return std::real(z * z + z); });
    const auto vt = conjugate_harmonic(v);
    double err = 0.0;
    for (std::size_t k = 0; k < g->size(); ++k) {
        const Complex z = g->node(k);
        err = std::max(err, std::abs(vt[k] - std::imag(z * z + z)));
    }
    CHECK(err < 1e-2);
}
