#include "curvforge/numerics/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace curvforge::numerics {

DomainDescriptor DomainDescriptor::unit_disk() {
    DomainDescriptor d;
    d.kind_ = DomainKind::UnitDisk;
    return d;
}

DomainDescriptor DomainDescriptor::annulus(double r_inner, double r_outer) {
    if (!(r_inner > 0.0) || !(r_inner < r_outer) || !std::isfinite(r_outer)) {
        throw ConfigError("annulus requires 0 < r_inner < r_outer");
    }
    DomainDescriptor d;
    d.kind_ = DomainKind::Annulus;
    d.r_inner_ = r_inner;
    d.r_outer_ = r_outer;
    d.lower_left_ = {-r_outer, -r_outer};
    d.upper_right_ = {r_outer, r_outer};
    return d;
}

DomainDescriptor DomainDescriptor::rectangle(Complex corner_a, Complex corner_b) {
    const double x0 = std::min(corner_a.real(), corner_b.real());
    const double x1 = std::max(corner_a.real(), corner_b.real());
    const double y0 = std::min(corner_a.imag(), corner_b.imag());
    const double y1 = std::max(corner_a.imag(), corner_b.imag());
    if (!(x1 > x0) || !(y1 > y0) || !std::isfinite(x1 - x0) || !std::isfinite(y1 - y0)) {
        throw ConfigError("rectangle corners must span a positive area");
    }
    DomainDescriptor d;
    d.kind_ = DomainKind::Rectangle;
    d.lower_left_ = {x0, y0};
    d.upper_right_ = {x1, y1};
    return d;
}

bool DomainDescriptor::contains(Complex z) const { return distance_to_boundary(z) > 0.0; }

double DomainDescriptor::distance_to_boundary(Complex z) const {
    switch (kind_) {
        case DomainKind::UnitDisk:
            return 1.0 - std::abs(z);
        case DomainKind::Annulus: {
            const double r = std::abs(z);
            return std::min(r - r_inner_, r_outer_ - r);
        }
        case DomainKind::Rectangle: {
            const double dx = std::min(z.real() - lower_left_.real(), upper_right_.real() - z.real());
            const double dy = std::min(z.imag() - lower_left_.imag(), upper_right_.imag() - z.imag());
            if (dx >= 0.0 && dy >= 0.0) return std::min(dx, dy);
            const double ox = std::max(0.0, -dx);
            const double oy = std::max(0.0, -dy);
            return -std::hypot(ox, oy);
        }
    }
    return 0.0;
}

double DomainDescriptor::diameter() const {
    switch (kind_) {
        case DomainKind::UnitDisk: return 2.0;
        case DomainKind::Annulus: return 2.0 * r_outer_;
        case DomainKind::Rectangle: return std::abs(upper_right_ - lower_left_);
    }
    return 0.0;
}

namespace {

// Positive roots of |p + t dir|^2 = R^2 (dir a unit vector).
void circle_crossings(Complex p, Complex dir, double radius, std::vector<double>& out) {
    const double b = (p * std::conj(dir)).real();
    const double c = std::norm(p) - radius * radius;
    const double disc = b * b - c;
    if (disc < 0.0) return;
    const double s = std::sqrt(disc);
    for (double t : {-b - s, -b + s}) {
        if (t > 0.0) out.push_back(t);
    }
}

}  // namespace

std::optional<double> DomainDescriptor::exit_distance(Complex p, Complex dir, double max_t) const {
    std::vector<double> roots;
    switch (kind_) {
        case DomainKind::UnitDisk:
            circle_crossings(p, dir, 1.0, roots);
            break;
        case DomainKind::Annulus:
            circle_crossings(p, dir, r_outer_, roots);
            circle_crossings(p, dir, r_inner_, roots);
            break;
        case DomainKind::Rectangle: {
            if (dir.real() > 0.5) roots.push_back(upper_right_.real() - p.real());
            if (dir.real() < -0.5) roots.push_back(p.real() - lower_left_.real());
            if (dir.imag() > 0.5) roots.push_back(upper_right_.imag() - p.imag());
            if (dir.imag() < -0.5) roots.push_back(p.imag() - lower_left_.imag());
            break;
        }
    }
    double best = std::numeric_limits<double>::infinity();
    for (double t : roots) {
        if (t > 0.0) best = std::min(best, t);
    }
    // Relative slack absorbs roundoff for neighbors lying exactly on the curve.
    if (best <= max_t * (1.0 + 1e-12)) return std::min(best, max_t);
    return std::nullopt;
}

std::string DomainDescriptor::name() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind_) {
        case DomainKind::UnitDisk: os << "unit-disk"; break;
        case DomainKind::Annulus: os << "annulus(" << r_inner_ << ", " << r_outer_ << ")"; break;
        case DomainKind::Rectangle:
            os << "rectangle(" << lower_left_.real() << "+" << lower_left_.imag() << "i, "
               << upper_right_.real() << "+" << upper_right_.imag() << "i)";
            break;
    }
    return os.str();
}

DomainGrid::DomainGrid(DomainDescriptor descriptor, int resolution)
    : descriptor_(descriptor), resolution_(resolution) {
    if (resolution < kMinResolution) {
        throw ConfigError("resolution " + std::to_string(resolution) + " is below the minimum of " +
                          std::to_string(kMinResolution));
    }
    const Complex ll = descriptor_.lower_left();
    const Complex ur = descriptor_.upper_right();
    const double width = ur.real() - ll.real();
    const double height = ur.imag() - ll.imag();
    spacing_ = std::max(width, height) / (resolution - 1);
    nx_ = static_cast<int>(std::floor(width / spacing_ + 1e-9)) + 1;
    ny_ = static_cast<int>(std::floor(height / spacing_ + 1e-9)) + 1;
    origin_ = ll;

    if (descriptor_.kind() == DomainKind::Annulus) {
        const double cells = (descriptor_.r_outer() - descriptor_.r_inner()) / spacing_;
        if (cells < 4.0) {
            std::ostringstream os;
            os << "resolution " << resolution << " leaves only " << cells
               << " cells across the annulus gap; at least 4 are required";
            throw ConfigError(os.str());
        }
    }

    lattice_to_node_.assign(static_cast<std::size_t>(nx_) * ny_, -1);
    for (int j = 0; j < ny_; ++j) {
        for (int i = 0; i < nx_; ++i) {
            const Complex z = lattice_point(i, j);
            if (descriptor_.contains(z)) {
                lattice_to_node_[static_cast<std::size_t>(j) * nx_ + i] = static_cast<int>(nodes_.size());
                nodes_.push_back(z);
                lattice_.push_back({i, j});
            }
        }
    }
    if (nodes_.empty()) throw ConfigError("grid has no interior nodes");

    static constexpr std::array<std::array<int, 2>, 4> offsets = {{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
    stencils_.resize(nodes_.size());
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        const auto [i, j] = lattice_[k];
        NodeStencil& st = stencils_[k];
        for (int d = 0; d < 4; ++d) {
            const int nb = index_of(i + offsets[d][0], j + offsets[d][1]);
            if (nb >= 0) {
                st.neighbor[d] = nb;
                st.leg[d] = spacing_;
                st.boundary_point[d] = nodes_[static_cast<std::size_t>(nb)];
                continue;
            }
            const auto t = descriptor_.exit_distance(nodes_[k], kDirectionVectors[d], spacing_);
            const double leg = t.value_or(spacing_);
            st.neighbor[d] = -1;
            st.leg[d] = leg;
            st.boundary_point[d] = nodes_[k] + leg * kDirectionVectors[d];
        }
    }
}

int DomainGrid::index_of(int i, int j) const {
    if (i < 0 || j < 0 || i >= nx_ || j >= ny_) return -1;
    return lattice_to_node_[static_cast<std::size_t>(j) * nx_ + i];
}

std::size_t DomainGrid::regular_count() const {
    return static_cast<std::size_t>(
        std::count_if(stencils_.begin(), stencils_.end(), [](const NodeStencil& s) { return s.regular(); }));
}

GridPtr build_grid(const DomainDescriptor& descriptor, int resolution) {
    return std::make_shared<const DomainGrid>(descriptor, resolution);
}

BoundarySamples sample_boundary(const DomainGrid& grid, const BoundaryFunction& g) {
    BoundarySamples out;
    out.values.assign(4 * grid.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const NodeStencil& st = grid.stencil(k);
        for (int d = 0; d < 4; ++d) {
            if (st.neighbor[d] >= 0) continue;
            const double v = g(st.boundary_point[d]);
            if (!std::isfinite(v)) {
                std::ostringstream os;
                os << "boundary data is not finite at " << st.boundary_point[d];
                throw ConfigError(os.str());
            }
            out.values[4 * k + d] = v;
        }
    }
    return out;
}

BoundarySamples transform_samples(const BoundarySamples& samples, const std::function<double(double)>& op) {
    BoundarySamples out = samples;
    for (double& v : out.values) {
        if (!std::isnan(v)) v = op(v);
    }
    return out;
}

}  // namespace curvforge::numerics
