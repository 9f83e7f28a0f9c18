#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "crr/chaincost.hpp"
#include "crr/level.hpp"
#include "crr/system.hpp"

namespace crr {

// A validated job description.  Unknown keys anywhere in the document are
// rejected with a JSON-pointer path; defaults are applied here so downstream
// code never touches raw JSON again.
struct JobConfig {
    nlohmann::json space_spec;   // null for the self-contained system kinds
    nlohmann::json system_spec;
    PNorm p = PNorm::one();
    bool levels_auto = true;
    std::vector<Level> levels;
    double nu = 0.0;
    std::optional<double> theta_rec;
    std::optional<double> eta_def;
    std::optional<double> cap;
    double eta = 1e-9;
    int resource_cap = 4096;
    std::map<std::string, std::string> outputs;  // name -> path, paths distinct
};

JobConfig parse_config(const nlohmann::json& doc);
JobConfig parse_config_file(const std::string& path);

// {"kind":"interval"|"circle"|"torus"|"cloud"|"matrix", ...}
MetricSpace build_space(const nlohmann::json& spec);

System build_system_from_config(const JobConfig& cfg);

// Levels from the config, falling back to the critical values of `costs`
// (guarded against absurdly fine auto grids).
std::vector<Level> resolve_levels(const JobConfig& cfg, const CostMatrix& costs,
                                  int auto_level_cap = 10000);

}  // namespace crr
