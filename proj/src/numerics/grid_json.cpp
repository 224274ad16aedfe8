#include "curvforge/numerics/grid_json.hpp"

#include <sstream>
#include <vector>

namespace curvforge::numerics {

nlohmann::json descriptor_to_json(const DomainDescriptor& d) {
    nlohmann::json j;
    switch (d.kind()) {
        case DomainKind::UnitDisk:
            j["kind"] = "unit-disk";
            j["params"] = nlohmann::json::object();
            break;
        case DomainKind::Annulus:
            j["kind"] = "annulus";
            j["params"] = {{"r_inner", d.r_inner()}, {"r_outer", d.r_outer()}};
            break;
        case DomainKind::Rectangle:
            j["kind"] = "rectangle";
            j["params"] = {{"corners",
                            {{d.lower_left().real(), d.lower_left().imag()},
                             {d.upper_right().real(), d.upper_right().imag()}}}};
            break;
    }
    return j;
}

DomainDescriptor descriptor_from_json(const nlohmann::json& j) {
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "unit-disk" || kind == "disk") return DomainDescriptor::unit_disk();
        const auto& p = j.at("params");
        if (kind == "annulus") {
            return DomainDescriptor::annulus(p.at("r_inner").get<double>(), p.at("r_outer").get<double>());
        }
        if (kind == "rectangle") {
            const auto& c = p.at("corners");
            return DomainDescriptor::rectangle({c.at(0).at(0).get<double>(), c.at(0).at(1).get<double>()},
                                               {c.at(1).at(0).get<double>(), c.at(1).at(1).get<double>()});
        }
        throw ConfigError("unknown domain kind '" + kind + "'");
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed domain descriptor: ") + e.what());
    }
}

nlohmann::json grid_to_json(const DomainGrid& grid) {
    nlohmann::json j = descriptor_to_json(grid.descriptor());
    j["resolution"] = grid.resolution();
    return j;
}

GridPtr grid_from_json(const nlohmann::json& j) {
    if (!j.contains("resolution") || !j["resolution"].is_number_integer()) {
        throw ConfigError("grid descriptor needs an integer 'resolution'");
    }
    return build_grid(descriptor_from_json(j), j["resolution"].get<int>());
}

DomainDescriptor parse_domain(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.empty()) throw ConfigError("empty domain");
    std::vector<double> nums;
    try {
        for (std::size_t i = 1; i < parts.size(); ++i) nums.push_back(std::stod(parts[i]));
    } catch (const std::exception&) {
        throw ConfigError("domain '" + text + "' has a non-numeric parameter");
    }
    const std::string& kind = parts[0];
    if ((kind == "disk" || kind == "unit-disk") && nums.empty()) return DomainDescriptor::unit_disk();
    if (kind == "annulus" && nums.size() == 2) return DomainDescriptor::annulus(nums[0], nums[1]);
    if (kind == "rectangle" && nums.size() == 4) {
        return DomainDescriptor::rectangle({nums[0], nums[1]}, {nums[2], nums[3]});
    }
    throw ConfigError("cannot parse domain '" + text +
                      "' (expected disk, annulus:RI:RO or rectangle:X0:Y0:X1:Y1)");
}

}  // namespace curvforge::numerics
