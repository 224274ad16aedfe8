#include <cmath>
#include <random>

#include "doctest.h"

#include "curvforge/liouville/developing_map.hpp"

using namespace curvforge;
using namespace curvforge::liouville;
using numerics::DomainDescriptor;
using numerics::build_grid;

namespace {

// f = T(z^m) with T(w) = (w - b) / (1 - conj(b) w); S_f = (1 - m^2) / (2 z^2).
MapJet power_map_jet(Complex z, int m, Complex b) {
    const Complex w = std::pow(z, m);
    const Complex w1 = static_cast<double>(m) * std::pow(z, m - 1);
    const Complex w2 = static_cast<double>(m * (m - 1)) * (m >= 2 ? std::pow(z, m - 2) : Complex{});
    const Complex w3 = static_cast<double>(m * (m - 1) * (m - 2)) * (m >= 3 ? std::pow(z, m - 3) : Complex{});
    const Complex den = 1.0 - std::conj(b) * w;
    const double k = 1.0 - std::norm(b);
    const Complex t0 = (w - b) / den;
    const Complex t1 = k / (den * den);
    const Complex t2 = 2.0 * std::conj(b) * k / (den * den * den);
    const Complex t3 = 6.0 * std::conj(b) * std::conj(b) * k / (den * den * den * den);
    return {t0, t1 * w1, t2 * w1 * w1 + t1 * w2, t3 * w1 * w1 * w1 + 3.0 * t2 * w1 * w2 + t1 * w3};
}

double rel(Complex a, Complex b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

std::vector<Complex> ring_targets(int count, double r0, double r1) {
    std::vector<Complex> t;
    for (int i = 0; i < count; ++i) {
        const double r = r0 + (r1 - r0) * (i % 5) / 4.0;
        t.push_back(std::polar(r, 2.0 * kPi * (i + 0.37) / count));
    }
    return t;
}

}  // namespace

TEST_CASE("closed-form Wirtinger derivatives match finite differences") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> c(-0.55, 0.55);
    const auto h3 = inner::parse_inner("blaschke:0.2");
    const std::vector<std::pair<AnalyticSource, inner::InnerFunction>> cases = {
        {AnalyticSource::hyperbolic(), inner::InnerFunction::one()},
        {AnalyticSource::one_critical(), inner::InnerFunction::identity()},
        {AnalyticSource::from_map("cubic", DomainDescriptor::unit_disk(),
                                  [](Complex z) { return power_map_jet(z, 3, {0.1, -0.2}); }, h3),
         h3},
    };
    const double d = 1e-5;
    for (const auto& [src, h] : cases) {
        for (int t = 0; t < 10; ++t) {
            const Complex z{c(rng), c(rng)};
            const Wirtinger w = src.evaluate(z);
            auto u = [&](Complex p) { return src.evaluate(p).u; };
            const double ux = (u(z + d) - u(z - d)) / (2 * d);
            const double uy = (u(z + Complex{0, d}) - u(z - Complex{0, d})) / (2 * d);
            CHECK(rel(w.uz, 0.5 * Complex{ux, -uy}) < 1e-8);
            auto uz = [&](Complex p) { return src.evaluate(p).uz; };
            const Complex dx = (uz(z + d) - uz(z - d)) / (2 * d);
            const Complex dy = (uz(z + Complex{0, d}) - uz(z - Complex{0, d})) / (2 * d);
            CHECK(rel(w.uzz, 0.5 * (dx - Complex{0, 1} * dy)) < 1e-8);
            CHECK(rel(*w.uzzbar, 0.5 * (dx + Complex{0, 1} * dy)) < 1e-8);
        }
    }
}

TEST_CASE("B_u and A_u on closed forms") {
    const auto hyp = AnalyticSource::hyperbolic();
    const auto one = inner::InnerFunction::one();
    const auto z = inner::InnerFunction::identity();
    const auto crit = AnalyticSource::one_critical();
    for (Complex p : {Complex{0.1, 0.2}, Complex{-0.6, 0.3}, Complex{0.0, 0.0}, Complex{0.7, -0.5}}) {
        CHECK(std::abs(compute_Bu(hyp, one, p)) < 1e-12);
        CHECK(std::abs(compute_Au(hyp, one, p)) < 1e-12);
    }
    // Oracle: B_u vanishes identically for log(2/(1-|z|^4)) with h = z.
    CHECK(std::abs(compute_Bu(crit, z, {0.5, 0.0})) < 1e-12);
    for (int k = 0; k < 10; ++k) {
        const Complex p = std::polar(0.1 + 0.08 * k, 0.7 * k + 0.2);
        CHECK(rel(compute_Au(crit, z, p), -0.75 / (p * p)) < 1e-10);
    }
    CHECK_THROWS_AS(compute_Au(crit, z, {0.0, 0.0}), DomainError);
}

TEST_CASE("A_u is half the Schwarzian of the generating map") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> c(-0.6, 0.6);
    const auto h = inner::parse_inner("blaschke:0.3-0.1i");
    for (int m : {2, 3}) {
        const Complex b{0.25, 0.1};
        const auto src = AnalyticSource::from_map("power", DomainDescriptor::unit_disk(),
                                                  [m, b](Complex z) { return power_map_jet(z, m, b); }, h);
        int checked = 0;
        while (checked < 20) {
            const Complex p{c(rng), c(rng)};
            if (std::abs(p) > 0.6 || std::abs(p) < 0.1 || std::abs(p - Complex{0.3, -0.1}) < 0.05) continue;
            const MapJet j = power_map_jet(p, m, b);
            const Complex r = j[2] / j[1];
            const Complex schwarzian = j[3] / j[1] - 1.5 * r * r;
            CHECK(rel(compute_Au(src, h, p), 0.5 * schwarzian) < 1e-6);
            CHECK(rel(schwarzian, (1.0 - m * m) / (2.0 * p * p)) < 1e-9);
            ++checked;
        }
    }
}

TEST_CASE("holomorphy residual of closed-form sources") {
    auto g = build_grid(DomainDescriptor::unit_disk(), 65);
    auto rep = holomorphy_residual(AnalyticSource::hyperbolic(), inner::InnerFunction::one(), g);
    CHECK(rep.nodes > 100);
    CHECK(rep.norm < 1e-9);
    auto rep2 = holomorphy_residual(AnalyticSource::one_critical(), inner::InnerFunction::identity(), g);
    CHECK(rep2.norm < 1e-9);
}

TEST_CASE("grid-backed source converges to the closed form") {
    const auto one_src = AnalyticSource::one_critical();
    const auto h = inner::InnerFunction::identity();
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> c(-0.5, 0.5);
    std::vector<Complex> pts;
    while (pts.size() < 20) {
        const Complex p{c(rng), c(rng)};
        if (std::abs(p) > 0.15 && std::abs(p) < 0.6) pts.push_back(p);
    }
    double prev = 0.0, prev_h = 0.0;
    for (int res : {129, 257}) {
        auto g = build_grid(DomainDescriptor::unit_disk(), res);
        auto m = curvature::sample_metric(g, h, [&](Complex z) { return one_src.evaluate(z).u; });
        const auto src = AnalyticSource::grid_backed(m);
        double err = 0.0;
        for (Complex p : pts) err = std::max(err, std::abs(compute_Bu(src, h, p) - compute_Bu(one_src, h, p)));
        HolomorphyOptions fixed;
        fixed.reference_spacing = 2.0 / 128;
        const double hol = holomorphy_residual(src, h, fixed).norm;
        if (res == 257) {
            CHECK(prev / err >= 3.5);
            CHECK(prev_h / hol >= 1.8);
        }
        prev = err;
        prev_h = hol;
        CHECK_THROWS_AS(src.evaluate({1.0 - 2.0 * g->spacing(), 0.0}), DomainError);
        CHECK_THROWS_AS(src.evaluate({1.5 * g->spacing(), 0.0}), DomainError);
        CHECK_NOTHROW(src.evaluate({1.0 - 3.5 * g->spacing(), 0.0}));

        if (res == 129) continue;
        // Negative control: a non-solution perturbation breaks holomorphy.
        auto bad = m;
        for (std::size_t k = 0; k < bad.u.size(); ++k) bad.u[k] += 1e-2 * std::real(std::pow(std::conj(g->node(k)), 2));
        HolomorphyOptions core;
        core.core_radius = 0.8;
        CHECK(holomorphy_residual(AnalyticSource::grid_backed(bad), h, core).norm >
              10.0 * holomorphy_residual(src, h, core).norm);
    }
}

TEST_CASE("Laurent constant and indicial roots") {
    const auto src = AnalyticSource::one_critical();
    const auto h = inner::InnerFunction::identity();
    for (double r : {0.1, 0.15, 0.2}) {
        const auto rep = laurent_b0(src, h, {0.0, 0.0}, r);
        CHECK(rep.order == 1);
        CHECK(std::abs(rep.b0 - (-0.75)) < 1e-8);
        CHECK(std::abs(rep.b0 - rep.expected_b0) < 1e-8);
        CHECK(std::abs(rep.b1) < 1e-8);
    }
    for (int n : {1, 2, 3}) {
        const double b0 = (1.0 - (n + 1.0) * (n + 1.0)) / 4.0;
        const auto r = indicial_roots(b0);
        CHECK(std::abs(r[0] - (n + 2.0) / 2.0) < 1e-12);
        CHECK(std::abs(r[1] - (-n / 2.0)) < 1e-12);
    }
    CHECK_THROWS_AS(laurent_b0(src, h, {0.85, 0.0}, 0.2), DomainError);
    const auto two = inner::parse_inner("blaschke:0, 0.15");
    const auto src2 = AnalyticSource::hyperbolic();
    CHECK_THROWS_AS(laurent_b0(src2, two, {0.0, 0.0}, 0.2), DomainError);
}

TEST_CASE("develop: hyperbolic metric gives the identity") {
    const auto targets = ring_targets(30, 0.1, 0.8);
    const auto dm = develop(AnalyticSource::hyperbolic(), inner::InnerFunction::one(), {0.0, 0.0}, targets);
    for (const auto& s : dm.samples) {
        CHECK(std::abs(s.f - s.z) < 1e-8);
        CHECK(std::abs(s.fprime - 1.0) < 1e-8);
    }
    CHECK(verify_representation(dm, inner::InnerFunction::one(), AnalyticSource::hyperbolic()) < 1e-8);
}

TEST_CASE("develop: h = z reproduces z^2 up to an automorphism") {
    const auto src = AnalyticSource::one_critical();
    const auto h = inner::InnerFunction::identity();
    const auto targets = ring_targets(50, 0.15, 0.8);
    const auto dm = develop(src, h, {0.5, 0.0}, targets);
    CHECK(std::abs(dm.samples[0].path.size() - 2.0) < 3.5);
    std::vector<Complex> f, g;
    for (const auto& s : dm.samples) {
        f.push_back(s.f);
        g.push_back(s.z * s.z);
    }
    const auto fit = mobius_fit(f, g);
    CHECK(fit.ok);
    CHECK(fit.fit_residual <= 1e-6);
    CHECK(verify_representation(dm, h, src) <= 1e-8);

    // Base point change: same map up to an automorphism.
    const auto dm2 = develop(src, h, {-0.3, 0.2}, targets);
    std::vector<Complex> f2;
    for (const auto& s : dm2.samples) f2.push_back(s.f);
    CHECK(mobius_fit(f2, f).ok);

    // f' vanishes at the zero of h.
    const auto crit = recover_critical_derivative(src, h, {0.5, 0.0}, {0.0, 0.0});
    CHECK(std::abs(crit.fprime_at_zero) <= 1e-6 * crit.local_scale);

    // Normalization at the base point.
    const auto at_base = develop(src, h, {0.5, 0.0}, {{0.5, 0.0}});
    CHECK(std::abs(at_base.samples[0].f) < 1e-15);
    CHECK(std::abs(at_base.samples[0].fprime - std::exp(at_base.u1_base)) < 1e-12);
}

TEST_CASE("develop: detours on either side agree") {
    const auto src = AnalyticSource::one_critical();
    const auto h = inner::InnerFunction::identity();
    DevelopOptions left, right;
    left.detour_side = 1;
    right.detour_side = -1;
    const std::vector<Complex> t{{-0.5, 0.0}, {-0.4, 0.01}};
    const auto a = develop(src, h, {0.5, 0.0}, t, left);
    const auto b = develop(src, h, {0.5, 0.0}, t, right);
    for (std::size_t i = 0; i < t.size(); ++i) {
        CHECK(a.samples[i].path.size() == 3);
        CHECK(std::abs(a.samples[i].path[1].imag()) > 0.05);
        CHECK(a.samples[i].path[1].imag() * b.samples[i].path[1].imag() < 0.0);
        CHECK(a.samples[i].clearance >= 0.05 - 1e-12);
        CHECK(std::abs(a.samples[i].f - b.samples[i].f) <= 2e-9 * std::max(1.0, std::abs(a.samples[i].f)));
    }
    CHECK_THROWS_AS(develop(src, h, {0.5, 0.0}, {{0.01, 0.0}}), DomainError);
    CHECK_THROWS_AS(develop(src, h, {0.5, 0.0}, {{1.2, 0.0}}), DomainError);
}

TEST_CASE("develop rejects metrics that are not pulled back from the disk") {
    // log(2/(1-|z|^2)) has curvature -1, not -4; its developed map leaves the disk.
    const auto src = AnalyticSource::closed_form("scaled", DomainDescriptor::unit_disk(), [](Complex z) {
        const double q = 1.0 - std::norm(z);
        Wirtinger w;
        w.u = std::log(2.0 / q);
        w.uz = std::conj(z) / q;
        w.uzz = std::conj(z) * std::conj(z) / (q * q);
        return w;
    });
    CHECK_THROWS_AS(develop(src, inner::InnerFunction::one(), {0.0, 0.0}, {{0.9, 0.0}}), VerificationError);
}

TEST_CASE("mobius_fit") {
    std::vector<Complex> g;
    for (int i = 0; i < 12; ++i) g.push_back(std::polar(0.2 + 0.05 * i, 1.3 * i));
    const auto id = mobius_fit(g, g);
    CHECK(id.ok);
    CHECK(std::abs(id.a) < 1e-12);
    CHECK(std::abs(id.theta) < 1e-12);

    std::vector<Complex> f;
    for (Complex w : g) f.push_back((w + 0.2) / (1.0 + 0.2 * w));
    const auto t = mobius_fit(f, g);
    CHECK(t.ok);
    CHECK(std::abs(t.a - Complex{-0.2, 0.0}) < 1e-10);
    CHECK(std::abs(t.theta) < 1e-10);

    std::vector<Complex> sq, sq_neg;
    for (Complex w : g) {
        sq.push_back(w * w);
        sq_neg.push_back((-w) * (-w));
    }
    CHECK(mobius_fit(sq, sq_neg).ok);

    std::vector<Complex> cube;
    for (Complex w : g) cube.push_back(w * w * w);
    const auto bad = mobius_fit(cube, g);
    CHECK_FALSE(bad.ok);
    CHECK_FALSE(bad.message.empty());
}

TEST_CASE("frostman shift and serialization") {
    const auto dm = develop(AnalyticSource::one_critical(), inner::InnerFunction::identity(), {0.5, 0.0},
                            ring_targets(8, 0.2, 0.7));
    const Complex alpha{0.3, -0.2};
    const auto shifted = frostman_shift(dm, alpha);
    for (std::size_t i = 0; i < dm.samples.size(); ++i) {
        const Complex f = dm.samples[i].f;
        CHECK(std::abs(shifted.samples[i].f - (f - alpha) / (1.0 - std::conj(alpha) * f)) < 1e-15);
        CHECK(std::abs(shifted.samples[i].f) < 1.0);
    }
    CHECK_THROWS_AS(frostman_shift(dm, {1.0, 0.0}), ConfigError);

    const auto j = to_json(dm, 1e-9);
    CHECK(j["base"][0].get<double>() == 0.5);
    CHECK(j["report"]["max_repr_error"].get<double>() == 1e-9);
    const auto back = developing_map_from_json(j);
    REQUIRE(back.samples.size() == dm.samples.size());
    for (std::size_t i = 0; i < dm.samples.size(); ++i) {
        CHECK(back.samples[i].f == dm.samples[i].f);
        CHECK(back.samples[i].path.size() == dm.samples[i].path.size());
    }
}
