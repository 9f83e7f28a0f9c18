#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crr/system.hpp"

namespace crr {

// Norm selector: 1 <= p <= 64 or infinity.  Larger finite p overflows the
// powered weights, so it is rejected; use inf instead.
struct PNorm {
    double p = 1.0;

    static PNorm one() { return PNorm{1.0}; }
    static PNorm two() { return PNorm{2.0}; }
    static PNorm inf();
    static PNorm of(double p);
    // "1", "2", ..., "64", "inf"
    static PNorm parse(const std::string& token);

    bool is_inf() const;
    std::string str() const;
};

bool operator==(const PNorm& a, const PNorm& b);

// All-pairs minimal eps-lp chain cost over chains of length >= 1.
// rho[i*n+j] is the least eps such that an eps-lp chain runs from i to j;
// rho[i*n+i] is a genuine return cost (the empty chain does not count).
struct CostMatrix {
    int n = 0;
    PNorm p;
    double eta = 1e-9;           // comparison tolerance for all downstream thresholds
    std::optional<double> cap;   // entries above it are +inf
    std::vector<double> rho;

    // Layer layout copied from nonautonomous systems; empty otherwise.
    std::vector<int> layer;
    int space_nodes = 0;

    double at(int i, int j) const { return rho[static_cast<std::size_t>(i) * n + j]; }
    bool layered() const { return !layer.empty(); }
};

// Per-source relaxation sweeps over the implicit complete graph with edge
// weights one_step_cost(i,j): additive on p-th powers for finite p, minimax
// for p = inf.  Edges heavier than `cap` are skipped; by the monotone
// composition of both norms, entries <= cap are exact minima and entries
// above cap are reported as exactly +inf.
CostMatrix compute_cost_matrix(const System& sys, PNorm p, std::optional<double> cap = {},
                               int dense_node_cap = 4096);

// One source row of the same computation, for systems too large for a dense
// matrix.
std::vector<double> single_source_costs(const System& sys, PNorm p, int source,
                                        std::optional<double> cap = {});

// Exhaustive enumeration of all chains of length 1..max_len; the independent
// oracle for compute_cost_matrix on small systems (n <= 8, max_len <= 8).
double brute_force_cost(const System& sys, PNorm p, int i, int j, int max_len);

// Binary dump (row-major doubles, little-endian) plus a JSON header.
void save_cost_matrix(const CostMatrix& cm, const std::string& bin_path,
                      const std::string& json_path);
CostMatrix load_cost_matrix(const std::string& bin_path, const std::string& json_path);

}  // namespace crr
