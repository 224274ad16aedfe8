#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "curvforge/common.hpp"
#include "curvforge/curvature/solver.hpp"

namespace curvforge::cli {

enum ExitCode : int { Ok = 0, ConfigFailure = 1, SolverFailure = 2 };

/// Parameters of one command after merging the JSON config file and the flags
/// (flags win). Field names double as the config-file keys.
struct RunConfig {
    std::string command;
    std::string domain = "disk";
    std::optional<std::string> h;
    std::optional<std::string> spec;
    std::string boundary = "zero";
    int resolution = 129;
    std::vector<double> schedule = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    double tol = 1e-8;
    bool blowup = false;
    bool oracle = false;
    std::string out = ".";
    std::string mode = "blaschke";   // construct: blaschke | modulus | ae
    std::string phi = "one";         // one | abs2plus | const:<c>
    std::string source = "grid";     // develop: grid | hyperbolic | one_critical
    std::string base = "auto";  // develop: a complex number or auto
    std::string targets = "ring";
    int detour_side = 0;
    std::vector<std::string> checks = {"example31", "ahlfors", "green"};

    /// Throws ConfigError: resolution >= 17, tol > 0, known names.
    void validate() const;
};

/// "1..10", "1..10:0.5" (step) or "1,2,4".
std::vector<double> parse_schedule(const std::string& text);

/// Named boundary data: zero, const:<c>, example41, log2plusz.
numerics::BoundaryFunction parse_boundary(const std::string& text);

/// Reads `path` (if non-empty) as a JSON object of RunConfig keys.
void apply_config_file(RunConfig& cfg, const nlohmann::json& file);

/// Rounds every float to 12 significant digits and writes with 2-space indent.
void write_json(const std::string& path, nlohmann::json j);

/// Applies CURVFORGE_THREADS when set. Throws ConfigError for a malformed value.
void apply_thread_cap();

int cmd_solve(const RunConfig& cfg);
int cmd_develop(const RunConfig& cfg);
int cmd_construct(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);

/// Full front door: parsing, config merge, dispatch and the exit-code contract.
int run(int argc, char** argv);

}  // namespace curvforge::cli
