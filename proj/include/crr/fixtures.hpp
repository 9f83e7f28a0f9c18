#pragma once

#include <string>
#include <vector>

#include "crr/system.hpp"

namespace crr {

// Toy models wired in for tests, the verification suite, and the docs.
const std::vector<std::string>& fixture_names();
System make_fixture(const std::string& name);

// Stagnation-threshold fixture: a circle map fixing [0, delta] pointwise and
// advancing every other node by a grid-exact displacement (one fast node just
// past delta jumping by hot_jump, then a profile capped at `amplitude`).
// Displacements are quantized to the grid so every chain cost is exact and
// the circulation sum-cost equals delta + h on the nose.
System build_c_ex_001(double delta, int n, double hot_jump = 0.3, double amplitude = 0.09);

}  // namespace crr
