#include "curvforge/cli/commands.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "curvforge/io/json_util.hpp"
#include "curvforge/liouville/developing_map.hpp"
#include "curvforge/numerics/grid_json.hpp"
#include "curvforge/numerics/kernels.hpp"
#include "curvforge/pipeline/construct.hpp"

namespace curvforge::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

double to_number(const std::string& s, const std::string& what) {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
        throw ConfigError("cannot parse " + what + " '" + s + "'");
    }
    return v;
}

template <class T>
bool one_of(const T& v, std::initializer_list<T> options) {
    return std::find(options.begin(), options.end(), v) != options.end();
}

fs::path prepare_out(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path probe = fs::path(dir) / ".curvforge-write-test";
    {
        std::ofstream f(probe);
        if (!f) throw ConfigError("output directory '" + dir + "' is not writable");
    }
    fs::remove(probe, ec);
    return fs::path(dir);
}

json config_json(const RunConfig& c) {
    json j{{"command", c.command}, {"domain", c.domain}, {"resolution", c.resolution}, {"tol", c.tol}};
    if (c.h) j["h"] = *c.h;
    if (c.spec) j["spec"] = *c.spec;
    return j;
}

numerics::GridPtr make_grid(const RunConfig& c) {
    return numerics::build_grid(numerics::parse_domain(c.domain), c.resolution);
}

// Targets for develop: "ring" puts 25 points on each of |z| = 0.3 and 0.6,
// otherwise a ';'-separated list of complex numbers.
std::vector<Complex> parse_targets(const std::string& text) {
    std::vector<Complex> out;
    if (text == "ring") {
        for (double r : {0.3, 0.6}) {
            for (int k = 0; k < 25; ++k) out.push_back(std::polar(r, 2.0 * kPi * (k + 0.5 * (r > 0.5)) / 25.0));
        }
        return out;
    }
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ';')) {
        if (!tok.empty()) out.push_back(inner::parse_complex(tok));
    }
    if (out.empty()) throw ConfigError("no develop targets in '" + text + "'");
    return out;
}

pipeline::BoundaryModulus parse_phi(const std::string& text, std::function<Complex(Complex)>* closed_g) {
    if (text == "one") {
        if (closed_g) *closed_g = [](Complex) { return Complex{1.0, 0.0}; };
        return [](Complex) { return 1.0; };
    }
    if (text == "abs2plus") {
        if (closed_g) *closed_g = [](Complex z) { return 2.0 + z; };
        return [](Complex xi) { return std::abs(2.0 + xi); };
    }
    if (text.rfind("const:", 0) == 0) {
        const double c = to_number(text.substr(6), "phi constant");
        if (closed_g) *closed_g = [c](Complex) { return Complex{c, 0.0}; };
        return [c](Complex) { return c; };
    }
    throw ConfigError("unknown phi '" + text + "' (expected one, abs2plus, const:<c>)");
}

// "auto": the origin unless it is within 0.15 of a zero of h, then the first clear point on |z| = 0.3.
Complex pick_base(const std::string& text, const inner::InnerFunction& h) {
    if (text != "auto") return inner::parse_complex(text);
    const auto zeros = h.zeros();
    auto clear = [&](Complex z) {
        for (const auto& p : zeros) {
            if (std::abs(z - p.z) < 0.15) return false;
        }
        return true;
    };
    if (clear({})) return {};
    for (int k = 0; k < 16; ++k) {
        const Complex z = std::polar(0.3, kPi * k / 8.0);
        if (clear(z)) return z;
    }
    throw ConfigError("no base point clear of the zeros of h; pass --base");
}

curvature::BlowupOptions blowup_options(const RunConfig& c) {
    curvature::BlowupOptions o;
    o.schedule = c.schedule;
    o.dirichlet.tolerance = c.tol;
    return o;
}

}  // namespace

void RunConfig::validate() const {
    if (resolution < 17) throw ConfigError("resolution must be at least 17");
    if (!(tol > 0.0)) throw ConfigError("tol must be positive");
    if (schedule.empty()) throw ConfigError("empty schedule");
    if (!one_of<std::string>(mode, {"blaschke", "modulus", "ae"})) throw ConfigError("unknown mode '" + mode + "'");
    if (!one_of<std::string>(source, {"grid", "hyperbolic", "one_critical"})) {
        throw ConfigError("unknown source '" + source + "'");
    }
    if (!one_of(detour_side, {-1, 0, 1})) throw ConfigError("detour side must be -1, 0 or 1");
    for (const auto& c : checks) {
        if (!one_of<std::string>(c, {"example31", "ahlfors", "green"})) throw ConfigError("unknown check '" + c + "'");
    }
    if (out.empty()) throw ConfigError("empty output directory");
}

std::vector<double> parse_schedule(const std::string& text) {
    std::vector<double> out;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const double a = to_number(text.substr(0, dots), "schedule");
        std::string rest = text.substr(dots + 2);
        double step = 1.0;
        const auto colon = rest.find(':');
        if (colon != std::string::npos) {
            step = to_number(rest.substr(colon + 1), "schedule step");
            rest = rest.substr(0, colon);
        }
        const double b = to_number(rest, "schedule");
        if (!(step > 0.0) || b < a) throw ConfigError("bad schedule range '" + text + "'");
        const int count = static_cast<int>(std::floor((b - a) / step + 1e-9)) + 1;
        for (int k = 0; k < count; ++k) out.push_back(a + k * step);
        return out;
    }
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(to_number(tok, "schedule"));
    }
    if (out.empty()) throw ConfigError("empty schedule '" + text + "'");
    return out;
}

numerics::BoundaryFunction parse_boundary(const std::string& text) {
    if (text == "zero") return [](Complex) { return 0.0; };
    if (text == "example41") {
        // log of 1/(2 sqrt r (1 - r)) on the circles r = 1/4 and r = 1/2 of annulus(1/4, 1/2).
        return [](Complex z) { return std::abs(z) < 0.375 ? std::log(4.0 / 3.0) : std::log(std::sqrt(2.0)); };
    }
    if (text == "log2plusz") return [](Complex z) { return std::log(std::abs(2.0 + z)); };
    if (text.rfind("const:", 0) == 0) {
        const double c = to_number(text.substr(6), "boundary constant");
        return [c](Complex) { return c; };
    }
    throw ConfigError("unknown boundary '" + text + "' (expected zero, const:<c>, example41, log2plusz)");
}

void apply_config_file(RunConfig& cfg, const json& file) {
    if (!file.is_object()) throw ConfigError("config file must hold a JSON object");
    try {
        for (const auto& [key, v] : file.items()) {
            if (key == "command") cfg.command = v.get<std::string>();
            else if (key == "domain") cfg.domain = v.get<std::string>();
            else if (key == "h") cfg.h = v.get<std::string>();
            else if (key == "spec") cfg.spec = v.get<std::string>();
            else if (key == "boundary") cfg.boundary = v.get<std::string>();
            else if (key == "resolution") cfg.resolution = v.get<int>();
            else if (key == "schedule") cfg.schedule = v.is_string() ? parse_schedule(v.get<std::string>()) : v.get<std::vector<double>>();
            else if (key == "tol") cfg.tol = v.get<double>();
            else if (key == "blowup") cfg.blowup = v.get<bool>();
            else if (key == "oracle") cfg.oracle = v.get<bool>();
            else if (key == "out") cfg.out = v.get<std::string>();
            else if (key == "mode") cfg.mode = v.get<std::string>();
            else if (key == "phi") cfg.phi = v.get<std::string>();
            else if (key == "source") cfg.source = v.get<std::string>();
            else if (key == "base") cfg.base = v.get<std::string>();
            else if (key == "targets") cfg.targets = v.get<std::string>();
            else if (key == "detour_side") cfg.detour_side = v.get<int>();
            else if (key == "checks") cfg.checks = v.get<std::vector<std::string>>();
            else throw ConfigError("unknown config key '" + key + "'");
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config file: ") + e.what());
    }
}

void write_json(const std::string& path, json j) {
    io::round_numbers(j, 12);
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write '" + path + "'");
    f << j.dump(2) << '\n';
}

void apply_thread_cap() {
    const char* env = std::getenv("CURVFORGE_THREADS");
    if (!env || !*env) return;
    const double n = to_number(env, "CURVFORGE_THREADS");
    if (n < 1 || n != std::floor(n)) throw ConfigError("CURVFORGE_THREADS must be a positive integer");
    numerics::set_thread_cap(static_cast<int>(n));
}

int cmd_solve(const RunConfig& cfg) {
    if (!cfg.h) throw ConfigError("solve needs --h");
    const auto out = prepare_out(cfg.out);
    const auto h = inner::parse_inner(*cfg.h);
    const auto grid = make_grid(cfg);

    std::pair<curvature::MetricField, curvature::SolveReport> solved = [&] {
        if (cfg.blowup) return curvature::solve_blowup(grid, h, blowup_options(cfg));
        curvature::DirichletOptions o;
        o.tolerance = cfg.tol;
        return curvature::solve_dirichlet(grid, h, parse_boundary(cfg.boundary), o);
    }();
    const auto& [m, report] = solved;

    {
        std::ofstream csv(out / "u.csv");
        if (!csv) throw ConfigError("cannot write u.csv");
        csv << "x,y,u\n";
        char line[128];
        for (std::size_t k = 0; k < m.u.size(); ++k) {
            const Complex z = grid->node(k);
            std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", z.real(), z.imag(), m.u[k]);
            csv << line;
        }
    }
    json j = curvature::to_json(report);
    j["config"] = config_json(cfg);
    j["config"]["kind"] = cfg.blowup ? "blowup" : "dirichlet";
    if (!cfg.blowup) j["config"]["boundary"] = cfg.boundary;
    j["grid"] = numerics::grid_to_json(*grid);
    write_json((out / "report.json").string(), j);
    return Ok;
}

int cmd_develop(const RunConfig& cfg) {
    const auto out = prepare_out(cfg.out);
    liouville::AnalyticSource src = liouville::AnalyticSource::hyperbolic();
    inner::InnerFunction h = inner::InnerFunction::one();
    std::optional<std::function<Complex(Complex)>> reference;
    if (cfg.source == "hyperbolic") {
        reference = [](Complex z) { return z; };
    } else if (cfg.source == "one_critical") {
        src = liouville::AnalyticSource::one_critical();
        h = inner::InnerFunction::identity();
        reference = [](Complex z) { return z * z; };
    } else {
        if (!cfg.h) throw ConfigError("develop --source grid needs --h");
        h = inner::parse_inner(*cfg.h);
        auto [m, report] = curvature::solve_blowup(make_grid(cfg), h, blowup_options(cfg));
        src = liouville::AnalyticSource::grid_backed(m);
    }
    liouville::DevelopOptions o;
    o.detour_side = cfg.detour_side;
    const auto dm = liouville::develop(src, h, pick_base(cfg.base, h), parse_targets(cfg.targets), o);
    json j = liouville::to_json(dm, liouville::verify_representation(dm, h, src));
    j["source"] = src.name();
    j["config"] = config_json(cfg);
    if (reference) {
        std::vector<Complex> f, g;
        for (const auto& s : dm.samples) {
            f.push_back(s.f);
            g.push_back((*reference)(s.z));
        }
        const auto fit = liouville::mobius_fit(f, g);
        j["reference_fit"] = {{"ok", fit.ok}, {"fit_residual", fit.fit_residual}, {"a", io::complex_json(fit.a)},
                              {"theta", fit.theta}};
    }
    write_json((out / "developing_map.json").string(), j);
    return Ok;
}

int cmd_construct(const RunConfig& cfg) {
    const auto out = prepare_out(cfg.out);
    const auto spec = inner::parse_spec(cfg.spec.value_or(""));
    pipeline::ConstructOptions o;
    o.resolution = cfg.resolution;
    o.schedule = cfg.schedule;
    o.develop.detour_side = cfg.detour_side;

    pipeline::ConstructionResult r;
    if (cfg.mode == "blaschke") {
        if (!cfg.spec) throw ConfigError("construct needs --spec");
        if (numerics::parse_domain(cfg.domain).kind() != numerics::DomainKind::UnitDisk) {
            throw DomainError("finite Blaschke construction runs on the unit disk");
        }
        r = pipeline::construct_blaschke(spec, o);
    } else if (cfg.mode == "modulus") {
        r = pipeline::construct_with_boundary_modulus(spec, parse_phi(cfg.phi, nullptr),
                                                      numerics::parse_domain(cfg.domain), o);
    } else {
        if (numerics::parse_domain(cfg.domain).kind() != numerics::DomainKind::UnitDisk) {
            throw DomainError("the outer-factor construction runs on the unit disk");
        }
        std::function<Complex(Complex)> g;
        const auto phi = parse_phi(cfg.phi, &g);
        r = pipeline::construct_with_ae_boundary_modulus(spec, phi, o, g);
    }

    json j = pipeline::to_json(r);
    j["config"] = config_json(cfg);
    j["config"]["mode"] = cfg.mode;
    if (cfg.mode != "blaschke") j["config"]["phi"] = cfg.phi;
    if (cfg.oracle) {
        if (cfg.mode != "blaschke") throw ConfigError("--oracle applies to mode blaschke");
        const auto oracle = pipeline::invert_critical_map(spec);
        const auto verdict = pipeline::equivalence_up_to_automorphism(r, oracle.blaschke);
        auto zeros = json::array();
        for (Complex a : oracle.blaschke.zeros) zeros.push_back(io::complex_json(a));
        j["oracle"] = {{"zeros", zeros},
                       {"unimodular", io::complex_json(oracle.blaschke.unimodular)},
                       {"residual", oracle.residual},
                       {"iterations", oracle.iterations},
                       {"used_homotopy", oracle.used_homotopy}};
        j["equivalence"] = {{"equivalent", verdict.equivalent},
                            {"tolerance", verdict.tolerance},
                            {"fit_residual", verdict.fit.fit_residual},
                            {"boundary_deviation", verdict.fit.boundary_deviation}};
    }
    write_json((out / "blaschke.json").string(), j);
    return Ok;
}

namespace {

// The singular atom has two closed-form solutions u1, u2: both have second-order
// residuals on |z| <= 0.5 (resolution and its refinement) and differ by more than 0.1 on |z| <= 0.9.
json check_example31(const RunConfig& cfg) {
    const inner::InnerFunction s(inner::SingularInner{});
    auto u1 = [&](Complex z) { return -std::log1p(-std::norm(z)) - inner::log_modulus(s, z); };
    auto u2 = [&](Complex z) {
        const inner::Jet jt = inner::jet(s, z);
        return std::log(std::abs(jt.d1) / ((1.0 - std::norm(jt.value)) * std::abs(jt.value)));
    };
    auto keep = [](Complex z) { return std::abs(z) <= 0.5; };
    const int coarse = cfg.resolution;
    const int fine = 2 * coarse - 1;
    double r1[2], r2[2], gap = 0.0;
    int idx = 0;
    for (int res : {coarse, fine}) {
        auto g = numerics::build_grid(numerics::DomainDescriptor::unit_disk(), res);
        const auto m1 = curvature::sample_metric(g, s, u1);
        const auto m2 = curvature::sample_metric(g, s, u2);
        r1[idx] = curvature::regular_residual_norm(curvature::residual(m1), keep);
        r2[idx] = curvature::regular_residual_norm(curvature::residual(m2), keep);
        if (res == fine) {
            for (std::size_t k = 0; k < g->size(); ++k) {
                if (std::abs(g->node(k)) <= 0.9) gap = std::max(gap, std::abs(m1.u[k] - m2.u[k]));
            }
        }
        ++idx;
    }
    const double o1 = r1[0] / r1[1], o2 = r2[0] / r2[1];
    // 3 accepts a second-order ratio (ideal 4) with margin for the coarse level.
    const bool pass = o1 >= 3.0 && o2 >= 3.0 && gap > 0.1;
    return {{"pass", pass}, {"residual_u1", r1[1]}, {"residual_u2", r2[1]}, {"order_ratio_u1", o1},
            {"order_ratio_u2", o2}, {"gap", gap}, {"fine_resolution", fine}};
}

json check_ahlfors(const RunConfig& cfg) {
    const auto h = inner::parse_inner(cfg.h.value_or("blaschke:0"));
    auto opt = blowup_options(cfg);
    auto [m, report] = curvature::solve_blowup(make_grid(cfg), h, opt);
    bool pass = true;
    double ahlfors = 1e300, upper = 1e300;
    for (const auto& l : report.blowup_levels) {
        if (!l.bounds.checked) continue;
        pass = pass && l.bounds.pass;
        ahlfors = std::min(ahlfors, l.bounds.ahlfors_margin);
        upper = std::min(upper, l.bounds.upper_margin);
    }
    const double tol = curvature::default_bound_tolerance(m.grid());
    pass = pass && ahlfors >= -tol && upper >= -tol;
    return {{"pass", pass}, {"h", h.describe()}, {"levels", report.blowup_levels.size()},
            {"min_ahlfors_margin", ahlfors}, {"min_upper_margin", upper}, {"tolerance", tol}};
}

json check_green(const RunConfig& cfg) {
    auto g = numerics::build_grid(numerics::DomainDescriptor::unit_disk(), cfg.resolution);
    const auto h = inner::parse_inner(cfg.h.value_or("one"));
    curvature::DirichletOptions o;
    o.tolerance = cfg.tol;
    auto [m, report] = curvature::solve_dirichlet(g, h, parse_boundary(cfg.boundary), o);
    const double e = curvature::check_green_representation(m);
    // The quadrature of the Green potential is first order in the spacing.
    const double limit = 0.32 * g->spacing();
    return {{"pass", e <= limit}, {"error", e}, {"limit", limit}};
}

}  // namespace

int cmd_verify(const RunConfig& cfg) {
    const auto out = prepare_out(cfg.out);
    json checks = json::object();
    bool all = true;
    for (const auto& name : cfg.checks) {
        json c;
        if (name == "example31") c = check_example31(cfg);
        else if (name == "ahlfors") c = check_ahlfors(cfg);
        else c = check_green(cfg);
        all = all && c["pass"].get<bool>();
        checks[name] = c;
    }
    json j{{"pass", all}, {"checks", checks}, {"config", config_json(cfg)}};
    write_json((out / "verify.json").string(), j);
    return all ? Ok : SolverFailure;
}

int run(int argc, char** argv) {
    CLI::App app{"curvforge: prescribed-curvature metrics, developing maps and Blaschke products"};
    app.require_subcommand(1);
    // -h would clash with --h, the holomorphic factor.
    app.set_help_flag("--help", "print this help and exit");

    std::string config_path, domain, h, spec, boundary, schedule, out, mode, phi, source, base, targets;
    int resolution = 0, detour = 0;
    double tol = 0.0;
    bool blowup = false, oracle = false;
    std::vector<std::string> checks;

    struct Flags {
        CLI::Option *domain, *h, *spec, *boundary, *resolution, *schedule, *tol, *blowup, *oracle, *out, *mode, *phi,
            *source, *base, *targets, *detour, *checks;
    };
    std::map<std::string, Flags> flags;

    auto add_common = [&](CLI::App* sub) {
        Flags f{};
        sub->add_option("--config", config_path, "JSON config file; flags override its values");
        f.domain = sub->add_option("--domain", domain, "disk | annulus:RI:RO | rectangle:X0:Y0:X1:Y1");
        f.h = sub->add_option("--h", h, "one | z | singular | blaschke:<points> | poly:<roots>, '*' for products");
        f.spec = sub->add_option("--spec", spec, "critical points, e.g. \"0.3, -0.2+0.1i, 0.1^2\"");
        f.boundary = sub->add_option("--boundary", boundary, "zero | const:<c> | example41 | log2plusz");
        f.resolution = sub->add_option("--resolution", resolution, "grid points across the domain (>= 17)");
        f.schedule = sub->add_option("--schedule", schedule, "blow-up levels: \"1..10\", \"1..10:0.5\" or \"1,2,4\"");
        f.tol = sub->add_option("--tol", tol, "Newton residual tolerance");
        f.blowup = sub->add_flag("--blowup", blowup, "blow-up boundary data instead of Dirichlet");
        f.oracle = sub->add_flag("--oracle", oracle, "also run the brute-force oracle (construct)");
        f.out = sub->add_option("--out", out, "output directory");
        f.mode = sub->add_option("--mode", mode, "construct: blaschke | modulus | ae");
        f.phi = sub->add_option("--phi", phi, "boundary modulus: one | abs2plus | const:<c>");
        f.source = sub->add_option("--source", source, "develop: grid | hyperbolic | one_critical");
        f.base = sub->add_option("--base", base, "develop: base point");
        f.targets = sub->add_option("--targets", targets, "develop: ring or ';'-separated points");
        f.detour = sub->add_option("--detour-side", detour, "-1, 0 or 1: side of the detour around zeros of h");
        f.checks = sub->add_option("--checks", checks, "verify: example31 ahlfors green");
        flags[sub->get_name()] = f;
    };
    for (const char* name : {"solve", "develop", "construct", "verify"}) {
        add_common(app.add_subcommand(name, std::string("run ") + name));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : ConfigFailure;
    }

    CLI::App* sub = app.get_subcommands().front();
    RunConfig cfg;
    try {
        apply_thread_cap();
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) throw ConfigError("cannot read config file '" + config_path + "'");
            json file;
            try {
                file = json::parse(f);
            } catch (const json::exception& e) {
                throw ConfigError(std::string("config file: ") + e.what());
            }
            apply_config_file(cfg, file);
        }
        cfg.command = sub->get_name();
        const Flags& f = flags.at(cfg.command);
        if (f.domain->count()) cfg.domain = domain;
        if (f.h->count()) cfg.h = h;
        if (f.spec->count()) cfg.spec = spec;
        if (f.boundary->count()) cfg.boundary = boundary;
        if (f.resolution->count()) cfg.resolution = resolution;
        if (f.schedule->count()) cfg.schedule = parse_schedule(schedule);
        if (f.tol->count()) cfg.tol = tol;
        if (f.blowup->count()) cfg.blowup = blowup;
        if (f.oracle->count()) cfg.oracle = oracle;
        if (f.out->count()) cfg.out = out;
        if (f.mode->count()) cfg.mode = mode;
        if (f.phi->count()) cfg.phi = phi;
        if (f.source->count()) cfg.source = source;
        if (f.base->count()) cfg.base = base;
        if (f.targets->count()) cfg.targets = targets;
        if (f.detour->count()) cfg.detour_side = detour;
        if (f.checks->count()) cfg.checks = checks;
        cfg.validate();

        if (cfg.command == "solve" && !cfg.h) {
            std::cerr << "error: solve needs --h\n\n" << sub->help();
            return ConfigFailure;
        }
        if (cfg.command == "solve") return cmd_solve(cfg);
        if (cfg.command == "develop") return cmd_develop(cfg);
        if (cfg.command == "construct") return cmd_construct(cfg);
        return cmd_verify(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return ConfigFailure;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return ConfigFailure;
    } catch (const PipelineError& e) {
        std::cerr << "pipeline error: " << e.what() << '\n';
        return SolverFailure;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << " (iterations " << e.iterations() << ", residual "
                  << e.residual() << ")\n";
        return SolverFailure;
    } catch (const VerificationError& e) {
        std::cerr << "verification error: " << e.what() << '\n';
        return SolverFailure;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return SolverFailure;
    }
}

}  // namespace curvforge::cli
