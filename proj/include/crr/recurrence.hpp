#pragma once

#include <vector>

#include "crr/chaincost.hpp"
#include "crr/level.hpp"

namespace crr {

// Two-sided per-node potential.
//
// tau_pos[i] = rho[i][i], the return cost.  defect[i] is the least forward
// cost at which the point's recurrence breaks: the cheapest z reachable from
// i whose way back is strictly dearer than the way out (by more than
// eta_def); +inf when no such z exists.  tau combines the two branches:
// points with return cost above theta_rec sit on the positive branch at
// POS(tau_pos), the rest on the negative branch at NEG(defect).
struct PotentialProfile {
    PNorm p;
    double theta_rec = 0.0;
    double eta_def = 0.0;
    double eta = 1e-9;
    double eta_grid = 0.0;  // snapping gap of the originating system, when known

    std::vector<double> tau_pos;
    std::vector<double> defect;
    std::vector<Level> tau;

    int size() const { return static_cast<int>(tau_pos.size()); }
};

PotentialProfile potential_profile(const CostMatrix& costs, double theta_rec, double eta_def);

// Default negative-branch gate: 0 for node-exact systems, else three times
// the median snapping gap (the max-based gap is hostage to a few nodes whose
// images leave the hull, so the median is used as the robust scale).
double default_theta_rec(const System& sys);
// Default defect slack: theta_rec, floored by the cost-matrix comparison
// tolerance so float-sum noise cannot invent violators.
double default_eta_def(double theta_rec, double eta);

// Convenience: profile with defaults taken from the system.
PotentialProfile profile_for(const System& sys, const CostMatrix& costs);

// Membership of the level set CR_level: the whole negative branch plus
// {tau_pos <= eps + eta} for POS(eps); {defect > eps} for NEG(eps) with
// finite eps, {defect = +inf} at NEG(inf).  POS(inf) is the whole space.
bool cr_member(const PotentialProfile& prof, int node, const Level& level);
std::vector<int> cr_set(const PotentialProfile& prof, const Level& level);

// Partition of cr_set(level) into chain-recurrent components: connected
// components of the mutual-reachability pair graph.  At POS(eps) nodes u,v
// are paired when rho[u][v] and rho[v][u] are both <= eps + eta; on the
// negative branch the mutual threshold is 0 + eta.  At POS(inf) mutual
// reachability means both costs are finite.
struct LevelComponents {
    Level level;
    std::vector<std::vector<int>> members;  // each sorted; ordered by smallest member
    std::vector<int> component_of;          // -1 for nodes outside cr_set
};

LevelComponents components_at(const CostMatrix& costs, const PotentialProfile& prof,
                              const Level& level);

// Thresholds where the filtration or its components can change: the sorted,
// eta-deduplicated union of {rho[i][i]} and {max(rho[i][j], rho[j][i])}.
std::vector<double> critical_values(const CostMatrix& costs);

// Least eps with CR_eps = X: max over nodes of the return cost (+inf if any
// return cost is infinite).
double circulation_cost(const PotentialProfile& prof);

// Positive potential of a layered system: for node (j,i), the least cost of
// reaching the same spatial point at a strictly later layer; +inf on the top
// layer.
std::vector<double> nonautonomous_potential(const CostMatrix& costs);

}  // namespace crr
