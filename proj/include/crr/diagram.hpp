#pragma once

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "crr/recurrence.hpp"

namespace crr {

// Sub-level-set diagram of a potential profile: membership[l*n + i] says
// whether node i belongs to cr_set(levels[l]).  Membership is non-decreasing
// along the level axis.
struct Diagram {
    std::vector<Level> levels;  // strictly increasing
    int n = 0;
    std::vector<std::uint8_t> membership;

    bool member(int level_idx, int node) const {
        return membership[static_cast<std::size_t>(level_idx) * n + node] != 0;
    }
};

Diagram build_diagram(const PotentialProfile& prof, std::vector<Level> levels);
// Auto grid: the levels where the diagram can change, read off the profile
// itself (NEG(inf), the distinct finite defects, -0, +0, the distinct finite
// return costs), padded with NEG(max defect) and POS(max tau_pos).
Diagram build_diagram_auto(const PotentialProfile& prof);

struct SvgStyle {
    double xmin = std::numeric_limits<double>::quiet_NaN();  // NaN = auto
    double xmax = std::numeric_limits<double>::quiet_NaN();
    double ymin = std::numeric_limits<double>::quiet_NaN();  // embed units
    double ymax = std::numeric_limits<double>::quiet_NaN();
    int width = 800;
    int height = 600;
    int precision = 6;  // significant digits in emitted floats
};

// 1-D state spaces only (interval / circle); byte-deterministic output.
// The NEG(inf) row renders as a hatched band clipped to the bottom.
std::string render_svg(const Diagram& diag, const MetricSpace& space, const SvgStyle& style = {});

// CSV/JSON emitters.  Row order is level-major, node-minor; all emitters are
// byte-deterministic.  Infinities appear as "inf" in both formats.
std::string diagram_csv(const Diagram& diag, const System& sys);
nlohmann::json diagram_json(const Diagram& diag, const System& sys);
std::string profile_csv(const PotentialProfile& prof, const System& sys);
nlohmann::json profile_json(const PotentialProfile& prof, const System& sys);
std::string components_csv(const LevelComponents& comps);
nlohmann::json components_json(const LevelComponents& comps);
nlohmann::json morse_graph_json(const struct MorseGraph& g, const System& sys);

// Layered systems: per-(layer, node) positive potential table.
std::string nonautonomous_potential_csv(const CostMatrix& costs, const System& sys);

// One-parameter family sweep: for each value mu, the profile and diagram of
// family(mu) on a fixed level grid.
struct SweepEntry {
    double mu;
    double circulation;
    PotentialProfile profile;
    Diagram diagram;
};

struct SweepResult {
    std::vector<Level> levels;
    std::vector<SweepEntry> entries;
};

SweepResult parameter_sweep(const std::function<System(double)>& family,
                            const std::vector<double>& values, PNorm p,
                            const std::vector<Level>& levels);

std::string sweep_csv(const SweepResult& sweep);
nlohmann::json sweep_json(const SweepResult& sweep);

// Shared number formatting: %.12g with explicit "inf"/"-inf".
std::string fmt_double(double v);

}  // namespace crr
