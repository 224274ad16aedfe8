#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "curvforge/numerics/domain.hpp"

namespace curvforge::numerics {

/// {"kind": "unit-disk" | "annulus" | "rectangle", "params": {...}, "resolution": N}
nlohmann::json grid_to_json(const DomainGrid& grid);
GridPtr grid_from_json(const nlohmann::json& j);

nlohmann::json descriptor_to_json(const DomainDescriptor& d);
DomainDescriptor descriptor_from_json(const nlohmann::json& j);

/// Parses "disk", "annulus:RI:RO" or "rectangle:X0:Y0:X1:Y1".
DomainDescriptor parse_domain(const std::string& text);

}  // namespace curvforge::numerics
