#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "curvforge/common.hpp"

namespace curvforge::numerics {

enum class DomainKind { UnitDisk, Annulus, Rectangle };

/// A bounded plane domain from one of the analytic families the solvers
/// support. Immutable value type; construct through the factories.
class DomainDescriptor {
public:
    static DomainDescriptor unit_disk();
    /// Requires 0 < r_inner < r_outer.
    static DomainDescriptor annulus(double r_inner, double r_outer);
    /// Axis-aligned rectangle spanned by two opposite corners; positive area required.
    static DomainDescriptor rectangle(Complex corner_a, Complex corner_b);

    DomainKind kind() const noexcept { return kind_; }
    double r_inner() const noexcept { return r_inner_; }
    double r_outer() const noexcept { return r_outer_; }
    Complex lower_left() const noexcept { return lower_left_; }
    Complex upper_right() const noexcept { return upper_right_; }

    bool contains(Complex z) const;
    /// Euclidean distance to the boundary; negative outside.
    double distance_to_boundary(Complex z) const;
    double diameter() const;
    bool simply_connected() const noexcept { return kind_ != DomainKind::Annulus; }

    /// Smallest t in (0, max_t] with p + t*dir on the boundary, for unit `dir`.
    std::optional<double> exit_distance(Complex p, Complex dir, double max_t) const;

    std::string name() const;

private:
    DomainDescriptor() = default;

    DomainKind kind_ = DomainKind::UnitDisk;
    double r_inner_ = 0.0;
    double r_outer_ = 1.0;
    Complex lower_left_{-1.0, -1.0};
    Complex upper_right_{1.0, 1.0};
};

/// Stencil directions, in the order used by every per-node array.
enum Direction : int { East = 0, West = 1, North = 2, South = 3 };

inline constexpr std::array<Complex, 4> kDirectionVectors = {
    Complex{1.0, 0.0}, Complex{-1.0, 0.0}, Complex{0.0, 1.0}, Complex{0.0, -1.0}};

/// Per-node neighbor data. A leg whose neighbor lies outside the domain
/// ends at the boundary crossing (Shortley–Weller), with `neighbor == -1`.
struct NodeStencil {
    std::array<int, 4> neighbor{-1, -1, -1, -1};
    std::array<double, 4> leg{};
    std::array<Complex, 4> boundary_point{};

    bool regular() const noexcept {
        return neighbor[0] >= 0 && neighbor[1] >= 0 && neighbor[2] >= 0 && neighbor[3] >= 0;
    }
};

/// Uniform Cartesian lattice over the domain's bounding box with its
/// interior mask and boundary-leg geometry. Immutable after construction.
class DomainGrid {
public:
    DomainGrid(DomainDescriptor descriptor, int resolution);

    const DomainDescriptor& descriptor() const noexcept { return descriptor_; }
    int resolution() const noexcept { return resolution_; }
    double spacing() const noexcept { return spacing_; }
    int nx() const noexcept { return nx_; }
    int ny() const noexcept { return ny_; }
    Complex origin() const noexcept { return origin_; }

    std::size_t size() const noexcept { return nodes_.size(); }
    Complex node(std::size_t k) const { return nodes_[k]; }
    std::span<const Complex> nodes() const noexcept { return nodes_; }
    const NodeStencil& stencil(std::size_t k) const { return stencils_[k]; }
    std::span<const NodeStencil> stencils() const noexcept { return stencils_; }
    std::array<int, 2> lattice_index(std::size_t k) const { return lattice_[k]; }

    Complex lattice_point(int i, int j) const {
        return origin_ + Complex{spacing_ * i, spacing_ * j};
    }
    /// Interior index of lattice point (i, j), or -1 when exterior / off-lattice.
    int index_of(int i, int j) const;
    bool interior(int i, int j) const { return index_of(i, j) >= 0; }

    /// Count of interior nodes whose four legs are all full-length.
    std::size_t regular_count() const;

private:
    DomainDescriptor descriptor_;
    int resolution_;
    double spacing_;
    int nx_ = 0;
    int ny_ = 0;
    Complex origin_;
    std::vector<int> lattice_to_node_;
    std::vector<Complex> nodes_;
    std::vector<std::array<int, 2>> lattice_;
    std::vector<NodeStencil> stencils_;
};

using GridPtr = std::shared_ptr<const DomainGrid>;

inline constexpr int kMinResolution = 17;

/// Discretizes `descriptor` with `resolution` lattice points across the
/// longest side of its bounding box. Throws ConfigError for resolution < 17
/// or an annulus gap narrower than four cells.
GridPtr build_grid(const DomainDescriptor& descriptor, int resolution);

using BoundaryFunction = std::function<double(Complex)>;

/// Boundary data sampled at every leg crossing: four slots per node, NaN on
/// legs that end at an interior neighbor.
struct BoundarySamples {
    std::vector<double> values;

    double at(std::size_t node, int direction) const { return values[4 * node + direction]; }
};

BoundarySamples sample_boundary(const DomainGrid& grid, const BoundaryFunction& g);

/// Same slots filled by transforming existing samples (e.g. exp(-g)).
BoundarySamples transform_samples(const BoundarySamples& samples,
                                  const std::function<double(double)>& op);

}  // namespace curvforge::numerics
