#include "curvforge/numerics/interpolate.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace curvforge::numerics {

namespace {

// Lagrange weights for nodes 0..3 evaluated at local coordinate s.
std::array<double, 4> cubic_weights(double s) {
    return {-(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0, s * (s - 2.0) * (s - 3.0) / 2.0,
            -s * (s - 1.0) * (s - 3.0) / 2.0, s * (s - 1.0) * (s - 2.0) / 6.0};
}

struct Block {
    std::array<int, 16> nodes;
    std::array<double, 4> wx;
    std::array<double, 4> wy;
};

Block locate(const DomainGrid& grid, Complex p) {
    const double h = grid.spacing();
    if (grid.descriptor().distance_to_boundary(p) < 2.0 * h * (1.0 - 1e-12)) {
        std::ostringstream os;
        os << "interpolation point " << p << " is closer than 2 grid spacings to the boundary";
        throw DomainError(os.str());
    }
    const double s = (p.real() - grid.origin().real()) / h;
    const double t = (p.imag() - grid.origin().imag()) / h;
    const int i0 = static_cast<int>(std::floor(s)) - 1;
    const int j0 = static_cast<int>(std::floor(t)) - 1;
    static constexpr std::array<std::array<int, 2>, 9> shifts = {
        {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, 1}, {1, -1}, {-1, -1}}};
    for (const auto& sh : shifts) {
        const int bi = i0 + sh[0];
        const int bj = j0 + sh[1];
        Block b;
        bool ok = true;
        for (int jj = 0; jj < 4 && ok; ++jj) {
            for (int ii = 0; ii < 4 && ok; ++ii) {
                const int k = grid.index_of(bi + ii, bj + jj);
                ok = k >= 0;
                b.nodes[static_cast<std::size_t>(4 * jj + ii)] = k;
            }
        }
        if (!ok) continue;
        b.wx = cubic_weights(s - bi);
        b.wy = cubic_weights(t - bj);
        return b;
    }
    std::ostringstream os;
    os << "no interior 4x4 interpolation block around " << p;
    throw DomainError(os.str());
}

template <typename T>
T evaluate(const Field<T>& field, Complex p) {
    const Block b = locate(field.grid(), p);
    T acc{};
    for (int jj = 0; jj < 4; ++jj) {
        T row{};
        for (int ii = 0; ii < 4; ++ii) {
            row += b.wx[static_cast<std::size_t>(ii)] * field[static_cast<std::size_t>(b.nodes[4 * jj + ii])];
        }
        acc += b.wy[static_cast<std::size_t>(jj)] * row;
    }
    return acc;
}

}  // namespace

double interpolate(const ScalarField& field, Complex p) { return evaluate(field, p); }
Complex interpolate(const ComplexField& field, Complex p) { return evaluate(field, p); }

}  // namespace curvforge::numerics
