#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <nlohmann/json.hpp>

#include "curvforge/common.hpp"

namespace curvforge::io {

inline nlohmann::json complex_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const nlohmann::json& j) {
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

/// Nearest double to the value printed with `digits` significant digits.
inline double round_significant(double v, int digits = 12) {
    if (!std::isfinite(v) || v == 0.0) return v;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return std::strtod(buf, nullptr);
}

/// Rounds every floating-point number in the document in place; non-finite
/// values become null.
inline void round_numbers(nlohmann::json& j, int digits = 12) {
    if (j.is_number_float()) {
        const double v = j.get<double>();
        j = std::isfinite(v) ? nlohmann::json(round_significant(v, digits)) : nlohmann::json(nullptr);
    } else if (j.is_array() || j.is_object()) {
        for (auto& e : j) round_numbers(e, digits);
    }
}

}  // namespace curvforge::io
