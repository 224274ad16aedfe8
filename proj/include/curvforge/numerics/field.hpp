#pragma once

#include <algorithm>
#include <cmath>
#include <iosfwd>
#include <span>
#include <vector>

#include "curvforge/numerics/domain.hpp"

namespace curvforge::numerics {

/// One value per interior node of a grid.
template <typename T>
class Field {
public:
    Field() = default;
    explicit Field(GridPtr grid, T fill = T{})
        : grid_(std::move(grid)), values_(grid_ ? grid_->size() : 0, fill) {}
    Field(GridPtr grid, std::vector<T> values) : grid_(std::move(grid)), values_(std::move(values)) {
        if (!grid_ || values_.size() != grid_->size()) {
            throw ConfigError("field value count does not match the grid's interior node count");
        }
    }

    template <typename Fn>
    static Field sample(GridPtr grid, Fn&& fn) {
        std::vector<T> v(grid->size());
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = fn(grid->node(k));
        return Field(std::move(grid), std::move(v));
    }

    const GridPtr& grid_ptr() const noexcept { return grid_; }
    const DomainGrid& grid() const { return *grid_; }
    std::size_t size() const noexcept { return values_.size(); }

    T& operator[](std::size_t k) { return values_[k]; }
    const T& operator[](std::size_t k) const { return values_[k]; }
    std::span<T> values() noexcept { return values_; }
    std::span<const T> values() const noexcept { return values_; }
    std::vector<T>& storage() noexcept { return values_; }

    bool all_finite() const {
        return std::all_of(values_.begin(), values_.end(), [](const T& v) {
            if constexpr (std::is_floating_point_v<T>) {
                return std::isfinite(v);
            } else {
                return std::isfinite(v.real()) && std::isfinite(v.imag());
            }
        });
    }

private:
    GridPtr grid_;
    std::vector<T> values_;
};

using ScalarField = Field<double>;
using ComplexField = Field<Complex>;

/// Max |a - b| over nodes selected by `keep` (all nodes when empty).
template <typename Pred>
double max_abs_difference(const ScalarField& a, const ScalarField& b, Pred&& keep) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (!keep(a.grid().node(k))) continue;
        worst = std::max(worst, std::abs(a[k] - b[k]));
    }
    return worst;
}

/// Writes `x,y,value` rows with 17 significant digits.
void write_csv(std::ostream& os, const ScalarField& field);
ScalarField read_csv(std::istream& is, GridPtr grid);

}  // namespace curvforge::numerics
