#pragma once

#include <string>
#include <vector>

#include "crr/config.hpp"

namespace crr {

struct VerifyResult {
    std::string name;
    bool pass;
    std::string detail;
};

// Runs every module-level invariant against the configured system: metric
// axioms, cost-matrix bounds and composition, p-nesting, the two-sided
// filtration, diagram monotonicity, the brute-force oracle (small systems),
// Morse-graph acyclicity (p = inf), collapse flags, and artifact determinism.
std::vector<VerifyResult> run_invariant_suite(const JobConfig& cfg);

}  // namespace crr
