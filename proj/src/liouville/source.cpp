#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "curvforge/liouville/developing_map.hpp"
#include "curvforge/numerics/interpolate.hpp"

namespace curvforge::liouville {

using numerics::ComplexField;
using numerics::DomainDescriptor;
using numerics::DomainGrid;
using numerics::ScalarField;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const Complex kNaNc{kNaN, kNaN};

// Fornberg weights for derivatives 0..2 at x = 0 from five integer offsets.
std::array<std::array<double, 5>, 3> fd_weights(const std::array<int, 5>& x) {
    std::array<std::array<double, 5>, 3> c{};
    double c1 = 1.0;
    double c4 = x[0];
    c[0][0] = 1.0;
    for (int i = 1; i < 5; ++i) {
        const int mn = std::min(i, 2);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i];
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

// Five-point windows, most centered first.
constexpr std::array<int, 5> kStarts = {-2, -1, -3, 0, -4};

struct Windows {
    std::array<std::array<std::array<double, 5>, 3>, 5> w;
    Windows() {
        for (std::size_t s = 0; s < kStarts.size(); ++s) {
            std::array<int, 5> x{};
            for (int i = 0; i < 5; ++i) x[i] = kStarts[s] + i;
            w[s] = fd_weights(x);
        }
    }
};

const Windows& windows() {
    static const Windows w;
    return w;
}

// First and second derivative along one lattice axis, or NaN when no window fits.
// `value(i, j)` returns NaN for unavailable lattice points.
template <typename T, typename Value>
std::pair<T, T> axis_derivatives(const Value& value, int i, int j, int di, int dj, double h) {
    const auto& w = windows().w;
    for (std::size_t s = 0; s < kStarts.size(); ++s) {
        std::array<T, 5> v{};
        bool ok = true;
        for (int m = 0; m < 5 && ok; ++m) {
            const int o = kStarts[s] + m;
            v[m] = value(i + o * di, j + o * dj);
            if constexpr (std::is_same_v<T, double>) {
                ok = std::isfinite(v[m]);
            } else {
                ok = std::isfinite(v[m].real()) && std::isfinite(v[m].imag());
            }
        }
        if (!ok) continue;
        T d1{}, d2{};
        for (int m = 0; m < 5; ++m) {
            d1 += w[s][1][m] * v[m];
            d2 += w[s][2][m] * v[m];
        }
        return {d1 / h, d2 / (h * h)};
    }
    if constexpr (std::is_same_v<T, double>) {
        return {kNaN, kNaN};
    } else {
        return {kNaNc, kNaNc};
    }
}

double zero_distance(const inner::InnerFunction& h, Complex z) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& p : h.zeros()) d = std::min(d, std::abs(z - p.z));
    return d;
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

struct AnalyticSource::Impl {
    std::string name;
    DomainDescriptor domain = DomainDescriptor::unit_disk();
    Function fn;
    bool grid = false;
    double clearance = 0.0;
    double zero_clearance = 0.0;
    std::vector<Complex> zeros;
    std::optional<curvature::MetricField> field;
    ComplexField uz, uzz;
};

AnalyticSource AnalyticSource::closed_form(std::string name, DomainDescriptor domain, Function fn) {
    auto impl = std::make_shared<Impl>();
    impl->name = std::move(name);
    impl->domain = domain;
    impl->fn = std::move(fn);
    AnalyticSource s;
    s.impl_ = std::move(impl);
    return s;
}

AnalyticSource AnalyticSource::hyperbolic() {
    return closed_form("hyperbolic", DomainDescriptor::unit_disk(), [](Complex z) {
        const double q = 1.0 - std::norm(z);
        const Complex zb = std::conj(z);
        Wirtinger w;
        w.u = -std::log(q);
        w.uz = zb / q;
        w.uzz = zb * zb / (q * q);
        w.uzzbar = 1.0 / (q * q);
        w.uzzbar_z = 2.0 * zb / (q * q * q);
        return w;
    });
}

AnalyticSource AnalyticSource::one_critical() {
    return closed_form("one-critical", DomainDescriptor::unit_disk(), [](Complex z) {
        const double s = std::norm(z);
        const double q = 1.0 - s * s;
        const Complex zb = std::conj(z);
        Wirtinger w;
        w.u = std::log(2.0 / q);
        w.uz = 2.0 * z * zb * zb / q;
        w.uzz = 2.0 * zb * zb / q + 4.0 * z * z * std::pow(zb, 4) / (q * q);
        w.uzzbar = 4.0 * s / (q * q);
        w.uzzbar_z = 4.0 * zb * (1.0 + 3.0 * s * s) / (q * q * q);
        return w;
    });
}

AnalyticSource AnalyticSource::from_map(std::string name, DomainDescriptor domain, std::function<MapJet(Complex)> f,
                                        inner::InnerFunction h) {
    return closed_form(std::move(name), domain, [f = std::move(f), h = std::move(h)](Complex z) {
        const MapJet j = f(z);
        const auto [l1, l2] = inner::log_derivative(h, z);
        const double q = 1.0 - std::norm(j[0]);
        const Complex fb = std::conj(j[0]);
        const Complex r = j[2] / j[1];
        Wirtinger w;
        w.u = std::log(std::abs(j[1])) - std::log(q) - inner::log_modulus(h, z);
        w.uz = 0.5 * r + fb * j[1] / q - 0.5 * l1;
        w.uzz = 0.5 * (j[3] / j[1] - r * r) + fb * j[2] / q + (fb * j[1]) * (fb * j[1]) / (q * q) - 0.5 * l2;
        w.uzzbar = std::norm(j[1]) / (q * q);
        w.uzzbar_z = j[2] * std::conj(j[1]) / (q * q) + 2.0 * std::norm(j[1]) * fb * j[1] / (q * q * q);
        return w;
    });
}

AnalyticSource AnalyticSource::grid_backed(const curvature::MetricField& m) {
    auto impl = std::make_shared<Impl>();
    const DomainGrid& g = m.grid();
    const double h = g.spacing();
    impl->name = "grid";
    impl->domain = g.descriptor();
    impl->grid = true;
    impl->clearance = 3.0 * h;
    impl->zero_clearance = 2.0 * h;
    impl->field = m;

    auto u_at = [&](int i, int j) {
        const int k = g.index_of(i, j);
        return k >= 0 ? m.u[static_cast<std::size_t>(k)] : kNaN;
    };
    const std::size_t n = g.size();
    std::vector<double> ux(n), uxx(n), uy(n), uyy(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto [i, j] = g.lattice_index(k);
        std::tie(ux[k], uxx[k]) = axis_derivatives<double>(u_at, i, j, 1, 0, h);
        std::tie(uy[k], uyy[k]) = axis_derivatives<double>(u_at, i, j, 0, 1, h);
    }
    auto uy_at = [&](int i, int j) {
        const int k = g.index_of(i, j);
        return k >= 0 ? uy[static_cast<std::size_t>(k)] : kNaN;
    };
    std::vector<Complex> uz(n), uzz(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto [i, j] = g.lattice_index(k);
        const double uxy = axis_derivatives<double>(uy_at, i, j, 1, 0, h).first;
        uz[k] = 0.5 * Complex{ux[k], -uy[k]};
        uzz[k] = 0.25 * Complex{uxx[k] - uyy[k], -2.0 * uxy};
    }
    impl->uz = ComplexField(m.grid_ptr(), std::move(uz));
    impl->uzz = ComplexField(m.grid_ptr(), std::move(uzz));
    for (const auto& z : m.h.zeros()) impl->zeros.push_back(z.z);

    const Impl* raw = impl.get();
    impl->fn = [raw](Complex z) {
        Wirtinger w;
        w.u = numerics::interpolate(raw->field->u, z);
        w.uz = numerics::interpolate(raw->uz, z);
        w.uzz = numerics::interpolate(raw->uzz, z);
        if (!finite(w.uz) || !finite(w.uzz)) {
            std::ostringstream os;
            os << "no derivative stencil data around " << z;
            throw DomainError(os.str());
        }
        return w;
    };
    AnalyticSource s;
    s.impl_ = std::move(impl);
    return s;
}

Wirtinger AnalyticSource::evaluate(Complex z) const {
    const Impl& m = *impl_;
    const double d = m.domain.distance_to_boundary(z);
    if (!(d > 0.0) || d < m.clearance) {
        std::ostringstream os;
        os << "source '" << m.name << "' cannot be evaluated at " << z << " (distance " << d
           << " to the boundary, need " << m.clearance << ")";
        throw DomainError(os.str());
    }
    for (Complex p : m.zeros) {
        if (std::abs(z - p) < m.zero_clearance) {
            std::ostringstream os;
            os << "source '" << m.name << "' cannot be evaluated within " << m.zero_clearance << " of the zero " << p;
            throw DomainError(os.str());
        }
    }
    return m.fn(z);
}

bool AnalyticSource::is_grid_backed() const noexcept { return impl_->grid; }
const std::string& AnalyticSource::name() const noexcept { return impl_->name; }
const DomainDescriptor& AnalyticSource::domain() const noexcept { return impl_->domain; }
double AnalyticSource::clearance() const noexcept { return impl_->clearance; }
double AnalyticSource::zero_clearance() const noexcept { return impl_->zero_clearance; }

const curvature::MetricField& AnalyticSource::field() const {
    if (!impl_->field) throw ConfigError("closed-form source has no grid field");
    return *impl_->field;
}
const ComplexField& AnalyticSource::nodal_uz() const {
    if (!impl_->grid) throw ConfigError("closed-form source has no nodal fields");
    return impl_->uz;
}
const ComplexField& AnalyticSource::nodal_uzz() const {
    if (!impl_->grid) throw ConfigError("closed-form source has no nodal fields");
    return impl_->uzz;
}

Complex compute_Bu(const AnalyticSource& src, const inner::InnerFunction& h, Complex z) {
    const Wirtinger w = src.evaluate(z);
    const Complex l1 = inner::log_derivative(h, z).first;
    return w.uzz - w.uz * w.uz - l1 * w.uz;
}

Complex compute_Au(const Wirtinger& w, const inner::InnerFunction& h, Complex z) {
    const auto [l1, l2] = inner::log_derivative(h, z);
    return w.uzz - w.uz * w.uz - l1 * w.uz + 0.5 * l2 - 0.25 * l1 * l1;
}

Complex compute_Au(const AnalyticSource& src, const inner::InnerFunction& h, Complex z) {
    return compute_Au(src.evaluate(z), h, z);
}

namespace {

bool measured(const DomainGrid& g, const inner::InnerFunction& h, Complex z, const HolomorphyOptions& o) {
    const double sp = o.reference_spacing.value_or(g.spacing());
    if (g.descriptor().distance_to_boundary(z) < o.boundary_cells * sp) return false;
    if (zero_distance(h, z) < o.zero_cells * sp) return false;
    if (o.core_radius && std::abs(z - o.center) > *o.core_radius) return false;
    return true;
}

HolomorphyReport finish(ScalarField r) {
    HolomorphyReport rep;
    for (std::size_t k = 0; k < r.size(); ++k) {
        if (std::isnan(r[k])) continue;
        ++rep.nodes;
        if (r[k] > rep.norm) {
            rep.norm = r[k];
            rep.worst = r.grid().node(k);
        }
    }
    rep.residual = std::move(r);
    return rep;
}

}  // namespace

HolomorphyReport holomorphy_residual(const AnalyticSource& src, const inner::InnerFunction& h,
                                     const HolomorphyOptions& options) {
    if (!src.is_grid_backed()) throw ConfigError("holomorphy_residual without a grid needs a grid-backed source");
    const DomainGrid& g = src.field().grid();
    const auto& uz = src.nodal_uz();
    const auto& uzz = src.nodal_uzz();
    const std::size_t n = g.size();
    // dA/dzbar = dE/dzbar - (h'/h) du_z/dzbar with E = u_zz - u_z^2. The pure h terms of A
    // are holomorphic; differencing them too would add (spacing^2 / 6) times their third
    // derivative, which dominates near a zero of h.
    std::vector<Complex> e(n, kNaNc);
    for (std::size_t k = 0; k < n; ++k) {
        if (finite(uz[k]) && finite(uzz[k])) e[k] = uzz[k] - uz[k] * uz[k];
    }
    ScalarField r(src.field().grid_ptr(), kNaN);
    const double sp = g.spacing();
    auto dbar = [&](const auto& f, const numerics::NodeStencil& st) -> Complex {
        const Complex fe = f[static_cast<std::size_t>(st.neighbor[numerics::East])];
        const Complex fw = f[static_cast<std::size_t>(st.neighbor[numerics::West])];
        const Complex fn = f[static_cast<std::size_t>(st.neighbor[numerics::North])];
        const Complex fs = f[static_cast<std::size_t>(st.neighbor[numerics::South])];
        if (!finite(fe) || !finite(fw) || !finite(fn) || !finite(fs)) return kNaNc;
        return 0.5 * ((fe - fw) / (2.0 * sp) + Complex{0.0, 1.0} * (fn - fs) / (2.0 * sp));
    };
    for (std::size_t k = 0; k < n; ++k) {
        const Complex z = g.node(k);
        if (!measured(g, h, z, options)) continue;
        const auto& st = g.stencil(k);
        if (!st.regular()) continue;
        const Complex de = dbar(e, st);
        const Complex duz = dbar(uz, st);
        if (!finite(de) || !finite(duz)) continue;
        r[k] = std::abs(de - inner::log_derivative(h, z).first * duz);
    }
    return finish(std::move(r));
}

HolomorphyReport holomorphy_residual(const AnalyticSource& src, const inner::InnerFunction& h,
                                     const numerics::GridPtr& grid, const HolomorphyOptions& options) {
    if (src.is_grid_backed()) return holomorphy_residual(src, h, options);
    ScalarField r(grid, kNaN);
    const double delta = 1e-3;
    for (std::size_t k = 0; k < grid->size(); ++k) {
        const Complex z = grid->node(k);
        if (!measured(*grid, h, z, options)) continue;
        const Wirtinger w = src.evaluate(z);
        if (w.uzzbar && w.uzzbar_z) {
            // dA/dzbar = d(u_z zbar)/dz - (2 u_z + h'/h) u_{z zbar}; h terms are holomorphic.
            const Complex l1 = inner::log_derivative(h, z).first;
            r[k] = std::abs(*w.uzzbar_z - (2.0 * w.uz + l1) * *w.uzzbar);
        } else {
            auto a = [&](Complex p) { return compute_Au(src, h, p); };
            auto d4 = [&](Complex step) {
                return (-a(z + 2.0 * step) + 8.0 * a(z + step) - 8.0 * a(z - step) + a(z - 2.0 * step)) /
                       (12.0 * delta);
            };
            r[k] = std::abs(0.5 * (d4({delta, 0.0}) + Complex{0.0, 1.0} * d4({0.0, delta})));
        }
    }
    return finish(std::move(r));
}

Complex laurent_coefficient(const std::function<Complex(Complex)>& a, Complex z0, double radius, int power,
                            int nodes) {
    // (1 / 2 pi i) \oint (z - z0)^power A dz = mean of (z - z0)^{power + 1} A over the circle.
    Complex sum{};
    for (int k = 0; k < nodes; ++k) {
        const Complex e = std::polar(radius, 2.0 * kPi * k / nodes);
        sum += std::pow(e, power + 1) * a(z0 + e);
    }
    return sum / static_cast<double>(nodes);
}

std::array<Complex, 2> indicial_roots(Complex b0) {
    const Complex s = std::sqrt(1.0 - 4.0 * b0);
    std::array<Complex, 2> r{0.5 * (1.0 + s), 0.5 * (1.0 - s)};
    if (r[1].real() > r[0].real()) std::swap(r[0], r[1]);
    return r;
}

LaurentReport laurent_b0(const AnalyticSource& src, const inner::InnerFunction& h, Complex z0, double radius) {
    if (!(radius > 0.0)) throw ConfigError("contour radius must be positive");
    const double room = src.domain().distance_to_boundary(z0) - radius;
    if (!(room > 0.0) || room < src.clearance()) {
        std::ostringstream os;
        os << "contour |z - " << z0 << "| = " << radius << " comes within " << room << " of the boundary";
        throw DomainError(os.str());
    }
    if (radius < src.zero_clearance()) throw DomainError("contour radius below the source's pole clearance");
    LaurentReport rep;
    for (const auto& p : h.zeros()) {
        const double d = std::abs(p.z - z0);
        if (d < 1e-7) {
            rep.order = p.multiplicity;
            continue;
        }
        if (d <= radius + std::max(src.zero_clearance(), 1e-9)) {
            std::ostringstream os;
            os << "contour around " << z0 << " touches or encloses the other pole " << p.z;
            throw DomainError(os.str());
        }
    }
    auto a = [&](Complex z) { return compute_Au(src, h, z); };
    rep.b0 = laurent_coefficient(a, z0, radius, 1);
    rep.b1 = laurent_coefficient(a, z0, radius, 0);
    const double n1 = rep.order + 1.0;
    rep.expected_b0 = (1.0 - n1 * n1) / 4.0;
    rep.indicial = indicial_roots(rep.b0);
    return rep;
}

}  // namespace curvforge::liouville
