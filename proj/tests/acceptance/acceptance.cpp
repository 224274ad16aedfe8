// End-to-end acceptance run: one PASS/FAIL line per criterion, details underneath.
// Exit status counts the failing criteria not listed in --known-failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curvforge/curvature/solver.hpp"
#include "curvforge/liouville/developing_map.hpp"
#include "curvforge/pipeline/construct.hpp"

using namespace curvforge;
using curvature::MetricField;
using liouville::AnalyticSource;
using numerics::DomainDescriptor;
using numerics::build_grid;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        pass = pass && ok;
        notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    }
};

double hyperbolic(Complex z) { return -std::log1p(-std::norm(z)); }
double one_critical(Complex z) { return std::log(2.0 / (1.0 - std::norm(z) * std::norm(z))); }

// max |e^{u - exact} - 1| on |z| <= 0.5: relative error of the metric density.
double density_error(const MetricField& m, const std::function<double(Complex)>& exact) {
    double worst = 0.0;
    for (std::size_t k = 0; k < m.u.size(); ++k) {
        const Complex z = m.grid().node(k);
        if (std::abs(z) <= 0.5) worst = std::max(worst, std::abs(std::expm1(m.u[k] - exact(z))));
    }
    return worst;
}

std::vector<Complex> ring_targets(int count, double r0, double r1) {
    std::vector<Complex> out;
    for (int k = 0; k < count; ++k) {
        const double r = r0 + (r1 - r0) * (k % 5) / 4.0;
        out.push_back(std::polar(r, 2.0 * kPi * k / count + 0.1));
    }
    return out;
}

double worst_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
}

// Blow-up fields shared by several criteria.
struct Shared {
    std::optional<MetricField> hz257;
    double hz257_seconds = 0.0;
};

Outcome criterion_1() {
    Outcome o;
    const auto t0 = Clock::now();
    auto [m, rep] = curvature::solve_blowup(build_grid(DomainDescriptor::unit_disk(), 257), inner::InnerFunction::one());
    const double t = seconds_since(t0);
    const double e = density_error(m, hyperbolic);
    o.require(e <= 1e-3, "h = 1, 257: max relative density error on |z| <= 0.5 = " + fmt("%.3e", e) + " (<= 1e-3)");
    o.require(t <= 60.0, "runtime " + fmt("%.1f", t) + " s (<= 60 s)");
    return o;
}

Outcome criterion_2(Shared& s) {
    Outcome o;
    const auto t0 = Clock::now();
    auto [m, rep] = curvature::solve_blowup(build_grid(DomainDescriptor::unit_disk(), 257), inner::InnerFunction::identity());
    s.hz257_seconds = seconds_since(t0);
    s.hz257 = m;
    const double e = density_error(m, one_critical);
    o.require(e <= 1e-3, "h = z, 257: max relative density error vs log(2/(1-|z|^4)) = " + fmt("%.3e", e) + " (<= 1e-3)");
    o.notes.push_back("     runtime " + fmt("%.1f", s.hz257_seconds) + " s");
    return o;
}

liouville::MapJet power_jet(Complex z, int m) {
    const double mm = m;
    return {std::pow(z, m), mm * std::pow(z, m - 1), mm * (mm - 1) * std::pow(z, m - 2),
            m >= 3 ? mm * (mm - 1) * (mm - 2) * std::pow(z, m - 3) : Complex{}};
}

Outcome criterion_3(Shared& s) {
    Outcome o;
    // Closed form: f = z^{n+1} with h = z^n.
    for (int n : {1, 2, 3}) {
        const auto h = inner::parse_inner("blaschke:0^" + std::to_string(n));
        const auto src = AnalyticSource::from_map("power", DomainDescriptor::unit_disk(),
                                                  [n](Complex z) { return power_jet(z, n + 1); }, h);
        const auto rep = liouville::laurent_b0(src, h, {}, 0.2);
        const double expected = (1.0 - (n + 1.0) * (n + 1.0)) / 4.0;
        const double err = std::abs(rep.b0 - expected);
        o.require(err <= 1e-8 && rep.expected_b0 == expected,
                  "closed form, order " + std::to_string(n) + ": |b0 - " + fmt("%.4g", expected) + "| = " + fmt("%.2e", err) + " (<= 1e-8)");
    }
    // Grid-backed at 257: the h = z blow-up, and a double zero at 0.2.
    {
        const auto h = inner::InnerFunction::identity();
        const auto rep = liouville::laurent_b0(AnalyticSource::grid_backed(*s.hz257), h, {}, 0.2);
        const double err = std::abs(rep.b0 - (-0.75));
        o.require(err <= 5e-2, "grid 257, h = z: b0 = " + fmt("%.6f", rep.b0.real()) + fmt("%+.2ei", rep.b0.imag()) +
                                   ", error " + fmt("%.2e", err) + " (<= 5e-2)");
    }
    {
        const auto h = inner::parse_inner("blaschke:0.2^2");
        auto [m, rep] = curvature::solve_blowup(build_grid(DomainDescriptor::unit_disk(), 257), h);
        const auto lr = liouville::laurent_b0(AnalyticSource::grid_backed(m), h, {0.2, 0.0}, 0.15);
        const double err = std::abs(lr.b0 - (-2.0));
        o.require(lr.order == 2 && err <= 5e-2, "grid 257, double zero at 0.2: b0 = " + fmt("%.6f", lr.b0.real()) +
                                                    fmt("%+.2ei", lr.b0.imag()) + ", error " + fmt("%.2e", err) + " (<= 5e-2)");
    }
    return o;
}

Outcome criterion_4() {
    Outcome o;
    const auto src = AnalyticSource::one_critical();
    const auto h = inner::InnerFunction::identity();
    const auto targets = ring_targets(50, 0.15, 0.85);
    const auto dm = liouville::develop(src, h, {0.4, 0.1}, targets);
    std::vector<Complex> f, g;
    for (const auto& smp : dm.samples) {
        f.push_back(smp.f);
        g.push_back(smp.z * smp.z);
    }
    const auto fit = liouville::mobius_fit(f, g, {}, 1e-6);
    o.require(fit.ok && fit.fit_residual <= 1e-6,
              "develop(h = z) vs z^2 on 50 targets: Mobius fit residual " + fmt("%.2e", fit.fit_residual) + " (<= 1e-6)");
    return o;
}

Outcome criterion_5() {
    Outcome o;
    pipeline::ConstructOptions opt;
    // The agreement is second order in the spacing: 8.7e-5 at 257 for two points, 2.6e-4 for four.
    opt.resolution = 513;
    for (const char* text : {"0.3", "0.3, -0.2+0.1i", "0.2^2, -0.3i", "0.5, -0.5, 0.5i, -0.1-0.4i"}) {
        const auto spec = inner::parse_spec(text);
        const int n = spec.total_multiplicity();
        const auto oracle = pipeline::invert_critical_map(spec);
        const double fwd =
            worst_of(pipeline::matched_residuals(spec.expanded(), inner::critical_points_of_finite_blaschke(oracle.blaschke)));
        const auto t0 = Clock::now();
        const auto r = pipeline::construct_blaschke(spec, opt);
        const double t = seconds_since(t0);
        const auto v = pipeline::equivalence_up_to_automorphism(r, oracle.blaschke, 1e-4);
        const std::string tag = std::string("{") + text + "}: ";
        o.require(fwd <= 1e-8, tag + "oracle forward critical points " + fmt("%.2e", fwd) + " (<= 1e-8)");
        o.require(r.degree == n + 1 && oracle.blaschke.degree() == n + 1,
                  tag + "degree " + std::to_string(r.degree) + ", oracle " + std::to_string(oracle.blaschke.degree()) +
                      " (expected " + std::to_string(n + 1) + ")");
        o.require(v.equivalent, tag + "equivalent to oracle: fit residual " + fmt("%.2e", v.fit.fit_residual) +
                                    ", boundary deviation " + fmt("%.2e", v.fit.boundary_deviation) + " (<= 1e-4), " +
                                    fmt("%.0f", t) + " s");
    }
    return o;
}

Outcome criterion_6() {
    Outcome o;
    auto lam = [](double r) { return 1.0 / (2.0 * std::sqrt(r) * (1.0 - r)); };
    auto u = [&](Complex z) { return std::log(lam(std::abs(z))); };
    const double e_in = std::abs(lam(0.25) - 4.0 / 3.0), e_out = std::abs(lam(0.5) - std::sqrt(2.0));
    o.require(e_in <= 1e-12 && e_out <= 1e-12,
              "boundary values 4/3 and sqrt 2: errors " + fmt("%.1e", e_in) + ", " + fmt("%.1e", e_out) + " (<= 1e-12)");
    const auto dom = DomainDescriptor::annulus(0.25, 0.5);
    const auto one = inner::InnerFunction::one();
    double prev = 0.0;
    for (int res : {129, 257}) {
        const auto m = curvature::sample_metric(build_grid(dom, res), one, u, u);
        const double r = curvature::regular_residual_norm(curvature::residual(m), [](Complex) { return true; });
        if (res == 257) {
            o.require(prev / r >= 3.5, "curvature residual of the closed form " + fmt("%.2e", prev) + " -> " + fmt("%.2e", r) +
                                           ", ratio " + fmt("%.2f", prev / r) + " (second order: >= 3.5)");
        }
        prev = r;
    }
    auto boundary = [](Complex z) { return std::abs(z) < 0.375 ? std::log(4.0 / 3.0) : std::log(std::sqrt(2.0)); };
    auto g = build_grid(dom, 257);
    auto [m, rep] = curvature::solve_dirichlet(g, one, boundary);
    double worst = 0.0;
    for (std::size_t k = 0; k < m.u.size(); ++k) worst = std::max(worst, std::abs(m.u[k] - u(g->node(k))));
    o.require(worst <= 5e-3, "Dirichlet solve at 257 vs log of the closed form: " + fmt("%.2e", worst) + " (<= 5e-3)");
    return o;
}

Outcome criterion_7() {
    Outcome o;
    const inner::InnerFunction s(inner::SingularInner{});
    auto u1 = [&](Complex z) { return hyperbolic(z) - inner::log_modulus(s, z); };
    auto u2 = [&](Complex z) {
        const inner::Jet j = inner::jet(s, z);
        return std::log(std::abs(j.d1) / ((1.0 - std::norm(j.value)) * std::abs(j.value)));
    };
    auto away = [](Complex z) { return std::abs(z) <= 0.8 && std::abs(z - 1.0) >= 0.5; };
    double p1 = 0.0, p2 = 0.0;
    for (int res : {129, 257}) {
        auto g = build_grid(DomainDescriptor::unit_disk(), res);
        const double r1 = curvature::regular_residual_norm(curvature::residual(curvature::sample_metric(g, s, u1)), away);
        const double r2 = curvature::regular_residual_norm(curvature::residual(curvature::sample_metric(g, s, u2)), away);
        if (res == 257) {
            o.require(p1 / r1 >= 3.5, "u1 residual " + fmt("%.2e", p1) + " -> " + fmt("%.2e", r1) + ", ratio " + fmt("%.2f", p1 / r1) + " (>= 3.5)");
            o.require(p2 / r2 >= 3.5, "u2 residual " + fmt("%.2e", p2) + " -> " + fmt("%.2e", r2) + ", ratio " + fmt("%.2f", p2 / r2) + " (>= 3.5)");
            double gap = 0.0;
            for (std::size_t k = 0; k < g->size(); ++k) {
                const Complex z = g->node(k);
                if (std::abs(z) <= 0.9) gap = std::max(gap, std::abs(u1(z) - u2(z)));
            }
            o.require(gap > 0.1, "sup |u1 - u2| on |z| <= 0.9 = " + fmt("%.3g", gap) + " (> 0.1)");
        }
        p1 = r1;
        p2 = r2;
    }
    return o;
}

Outcome criterion_8() {
    Outcome o;
    for (const char* text : {"0", "0.3", "0.4, -0.4", "0.3, -0.2+0.1i", "0.2^2, -0.3i"}) {
        const auto h = inner::blaschke_from_spec(inner::parse_spec(text));
        auto g = build_grid(DomainDescriptor::unit_disk(), 129);
        auto [m, rep] = curvature::solve_blowup(g, h);
        const double tol = curvature::default_bound_tolerance(*g);
        bool levels_ok = !rep.blowup_levels.empty();
        double ahl = 1e300, up = 1e300;
        double low = 1e300;
        for (const auto& l : rep.blowup_levels) {
            levels_ok = levels_ok && l.bounds.checked && l.bounds.lower_checked && l.bounds.pass;
            ahl = std::min(ahl, l.bounds.ahlfors_margin);
            up = std::min(up, l.bounds.upper_margin);
            low = std::min(low, l.bounds.lower_margin);
        }
        levels_ok = levels_ok && ahl >= -tol && up >= -tol && low >= -tol;
        // Squeeze on the limit: 0 <= u - log lambda <= -log|h|. At a finite level the
        // lower side misses by about e^{-n} / (2 dist), so it is measured from one
        // spacing inward; the level-n form above covers every node.
        double lo = 1e300, hi = 1e300, edge = 1e300;
        for (std::size_t k = 0; k < m.u.size(); ++k) {
            const Complex z = g->node(k);
            const double d = m.u[k] - hyperbolic(z);
            if (1.0 - std::abs(z) >= g->spacing()) {
                lo = std::min(lo, d);
            } else {
                edge = std::min(edge, d);
            }
            const double lh = inner::log_modulus(h, z);
            if (std::isfinite(lh)) hi = std::min(hi, -lh - d);
        }
        const std::string tag = std::string("{") + text + "}: ";
        o.require(levels_ok, tag + std::to_string(rep.blowup_levels.size()) + " levels, min Ahlfors margin " + fmt("%.2e", ahl) +
                                 ", upper " + fmt("%.2e", up) + ", level-radius lower " + fmt("%.2e", low) + " (>= -" +
                                 fmt("%.1e", tol) + ")");
        o.require(lo >= -tol && hi >= -tol, tag + "squeeze: min(u - log lambda) " + fmt("%.2e", lo) +
                                                ", min(-log|h| - (u - log lambda)) " + fmt("%.2e", hi) + " (>= -" +
                                                fmt("%.1e", tol) + "); outermost band " + fmt("%.2e", edge));
    }
    return o;
}

Outcome criterion_9() {
    Outcome o;
    std::mt19937 rng(20261014);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const std::vector<inner::InnerFunction> hs = {inner::InnerFunction::one(), inner::InnerFunction::identity(),
                                                  inner::parse_inner("blaschke:0.3, -0.2+0.1i")};
    auto g = build_grid(DomainDescriptor::unit_disk(), 65);
    double worst = 1e300;
    bool all = true;
    for (int t = 0; t < 20; ++t) {
        const double a = 2.0 * U(rng) - 1.0, b = 0.5 * U(rng), c = U(rng), k = 1 + static_cast<int>(3 * U(rng));
        const double d = 0.5 * U(rng), e = 0.3 * U(rng), phase = 2 * kPi * U(rng);
        auto g1 = [=](Complex z) { return a + b * std::cos(k * std::arg(z) + c); };
        // g2 - g1 = d + e (1 + sin) >= 0, zero only when d and e both vanish.
        auto g2 = [=](Complex z) { return g1(z) + d + e * (1.0 + std::sin(std::arg(z) + phase)); };
        const auto& h = hs[t % hs.size()];
        auto [m1, r1] = curvature::solve_dirichlet(g, h, g1);
        auto [m2, r2] = curvature::solve_dirichlet(g, h, g2);
        try {
            const auto c12 = curvature::check_comparison(m1, m2, 1e-7);
            worst = std::min(worst, c12.worst_margin);
        } catch (const VerificationError& err) {
            all = false;
            worst = std::min(worst, err.worst_value());
        }
    }
    o.require(all && worst >= -1e-7, "20 random ordered boundary pairs: min(u2 - u1) = " + fmt("%.2e", worst) + " (>= -1e-7)");
    // Levels n = 1..10 solved independently: u_{n+1} >= u_n nodewise.
    MetricField prev;
    double mono = 1e300;
    bool mono_ok = true;
    for (int n = 1; n <= 10; ++n) {
        auto [m, r] = curvature::solve_dirichlet(g, inner::InnerFunction::identity(), [n](Complex) { return double(n); });
        if (n > 1) {
            try {
                mono = std::min(mono, curvature::check_comparison(prev, m, 1e-7).worst_margin);
            } catch (const VerificationError& err) {
                mono_ok = false;
                mono = std::min(mono, err.worst_value());
            }
        }
        prev = m;
    }
    o.require(mono_ok && mono >= -1e-7, "blow-up levels 1..10 (h = z): min(u_{n+1} - u_n) = " + fmt("%.2e", mono) + " (>= -1e-7)");
    return o;
}

Outcome criterion_10(Shared& s) {
    Outcome o;
    const auto h = inner::InnerFunction::identity();
    liouville::HolomorphyOptions fixed;
    // One measured set for all three levels: the band of the coarsest grid.
    fixed.reference_spacing = 2.0 / 128;
    std::vector<double> norms;
    std::optional<MetricField> fine;
    for (int res : {129, 257, 513}) {
        MetricField m;
        if (res == 257) {
            m = *s.hz257;
        } else {
            m = curvature::solve_blowup(build_grid(DomainDescriptor::unit_disk(), res), h).first;
        }
        norms.push_back(liouville::holomorphy_residual(AnalyticSource::grid_backed(m), h, fixed).norm);
        if (res == 513) fine = m;
    }
    for (int i = 1; i < 3; ++i) {
        const double ratio = norms[i - 1] / norms[i];
        o.require(ratio >= 1.8, "dbar A residual " + fmt("%.3e", norms[i - 1]) + " -> " + fmt("%.3e", norms[i]) + ", ratio " +
                                    fmt("%.2f", ratio) + " (>= 1.8)");
    }
    auto bad = *fine;
    for (std::size_t k = 0; k < bad.u.size(); ++k) bad.u[k] += 1e-2 * std::real(std::pow(std::conj(bad.grid().node(k)), 2));
    const double nb = liouville::holomorphy_residual(AnalyticSource::grid_backed(bad), h, fixed).norm;
    o.require(nb >= 10.0 * norms[2], "negative control (u + 1e-2 Re conj(z)^2) at 513: " + fmt("%.3e", nb) + ", " +
                                         fmt("%.1f", nb / norms[2]) + "x the solved field (>= 10x)");
    return o;
}

Outcome criterion_11() {
    Outcome o;
    pipeline::ConstructOptions opt;
    opt.resolution = 257;
    const auto spec0 = inner::CriticalSpec::from_points({{0.0, 0.0}});
    const auto r22 = pipeline::construct_with_boundary_modulus(spec0, [](Complex) { return 1.0; },
                                                               DomainDescriptor::unit_disk(), opt);
    o.require(r22.diagnostics.profile_error <= 5e-2,
              "phi = 1, spec {0}: max |profile - 1| at r = " + fmt("%.4f", r22.diagnostics.profile_radius) + " is " +
                  fmt("%.3e", r22.diagnostics.profile_error) + " (<= 5e-2)");
    const auto r23 = pipeline::construct_with_ae_boundary_modulus(
        inner::CriticalSpec{}, [](Complex xi) { return std::abs(2.0 + xi); }, opt, [](Complex z) { return 2.0 + z; });
    o.require(r23.diagnostics.profile_error <= 5e-2,
              "phi = |2 + xi|: max |profile - phi| at r = " + fmt("%.4f", r23.diagnostics.profile_radius) + " is " +
                  fmt("%.3e", r23.diagnostics.profile_error) + " (<= 5e-2)");
    o.require(std::isfinite(r23.diagnostics.sup_density),
              "sup of |f'|/(1-|f|^2) over the grid = " + fmt("%.6g", r23.diagnostics.sup_density) + " (finite)");
    o.notes.push_back("     conjugate error vs 2 + z " + fmt("%.2e", r23.diagnostics.conjugate_error) +
                      ", representation error " + fmt("%.2e", r23.diagnostics.repr_error));
    return o;
}

Outcome criterion_12(const std::string& bin) {
    Outcome o;
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / "curvforge_acceptance";
    fs::remove_all(root);
    const std::vector<std::pair<std::string, std::string>> runs = {
        {"solve --h blaschke:0 --blowup --resolution 65", "report.json"},
        {"develop --source grid --h z --resolution 65", "developing_map.json"},
        {"construct --spec \"0.3, -0.2+0.1i\" --oracle --resolution 65", "blaschke.json"},
        {"verify --resolution 33", "verify.json"},
    };
    int idx = 0;
    for (const auto& [args, file] : runs) {
        std::string bytes[2];
        bool ran = true;
        for (int rep = 0; rep < 2; ++rep) {
            const fs::path dir = root / (std::to_string(idx) + "_" + std::to_string(rep));
            const std::string cmd = "\"" + bin + "\" " + args + " --out \"" + dir.string() + "\" > /dev/null 2>&1";
            ran = ran && std::system(cmd.c_str()) == 0;
            std::ifstream f(dir / file, std::ios::binary);
            std::stringstream ss;
            ss << f.rdbuf();
            bytes[rep] = ss.str();
        }
        o.require(ran && !bytes[0].empty() && bytes[0] == bytes[1],
                  args.substr(0, args.find(' ')) + ": two runs give bit-identical " + file + " (" +
                      std::to_string(bytes[0].size()) + " bytes)");
        ++idx;
    }
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria 1-12"};
    std::string bin = CURVFORGE_BIN;
    std::vector<int> only, known;
    app.add_option("--cli", bin, "path to the curvforge executable");
    app.add_option("--only", only, "run only these criteria");
    app.add_option("--known-failures", known, "criteria whose FAIL does not set the exit status");
    std::string report_path;
    app.add_option("--report", report_path, "also write the report to this file");
    CLI11_PARSE(app, argc, argv);

    std::string report;
    auto emit = [&](const std::string& line) {
        std::printf("%s\n", line.c_str());
        std::fflush(stdout);
        report += line + "\n";
        if (!report_path.empty()) std::ofstream(report_path) << report;
    };
    const std::set<int> run_set(only.begin(), only.end()), known_set(known.begin(), known.end());

    Shared shared;
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"hyperbolic recovery", [] { return criterion_1(); }},
        {"one-critical-point metric", [&] { return criterion_2(shared); }},
        {"Laurent constant", [&] { return criterion_3(shared); }},
        {"developing-map uniqueness", [] { return criterion_4(); }},
        {"oracle agreement", [] { return criterion_5(); }},
        {"annulus constants", [] { return criterion_6(); }},
        {"nonuniqueness witness", [] { return criterion_7(); }},
        {"bound suite", [] { return criterion_8(); }},
        {"comparison and monotonicity", [] { return criterion_9(); }},
        {"holomorphy of A_u", [&] { return criterion_10(shared); }},
        {"boundary-modulus profiles", [] { return criterion_11(); }},
        {"CLI determinism", [&] { return criterion_12(bin); }},
    };

    int failures = 0, counted = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        // Criteria 3 and 10 reuse the h = z field of criterion 2.
        const bool needed = run_set.empty() || run_set.count(id) ||
                            (id == 2 && (run_set.count(3) || run_set.count(10)));
        if (!needed) continue;
        const auto t0 = Clock::now();
        Outcome out;
        try {
            out = criteria[i].second();
        } catch (const std::exception& e) {
            out.require(false, std::string("exception: ") + e.what());
        }
        const double t = seconds_since(t0);
        if (!run_set.empty() && !run_set.count(id)) continue;
        char head[160];
        std::snprintf(head, sizeof head, "%s %2d %s (%.0f s)", out.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(), t);
        emit(head);
        for (const auto& n : out.notes) emit("        " + n);
        if (!out.pass) {
            ++failures;
            if (!known_set.count(id)) ++counted;
        }
    }
    std::string tail = std::to_string(failures) + " criteria failed";
    if (failures != counted) tail += " (" + std::to_string(failures - counted) + " listed as known failures)";
    emit(tail);
    return counted;
}
