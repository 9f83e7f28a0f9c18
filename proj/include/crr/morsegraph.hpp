#pragma once

#include <set>
#include <string>
#include <vector>

#include "crr/recurrence.hpp"

namespace crr {

// Directed (hyper-)graph on the chain-recurrent components of one level.
//
// In the nu-error variant, a node x witnesses the edge (j,k) when component j
// reaches x within nu and x reaches component k within nu; A(x) and W(x)
// collect all such components, edges are the union of A(x) x W(x) without
// loops, and each distinct non-empty pair (A(x), W(x)) becomes a hyper-edge.
// The limit-set variants instead use alpha/omega limit sets of a node-exact
// system; the G' variant restricts witnesses to nodes outside every
// component.
struct MorseGraph {
    enum class Variant { NuError, LimitSetG, LimitSetGPrime };

    Level level;
    double nu = 0.0;
    PNorm p;
    Variant variant = Variant::NuError;

    std::vector<std::vector<int>> vertices;  // component node sets

    struct Edge {
        int src, dst;
        int witness;
    };
    std::vector<Edge> edges;  // sorted by (src, dst)

    struct HyperEdge {
        std::vector<int> sources;  // component ids, sorted
        std::vector<int> targets;
        int witness;
    };
    std::vector<HyperEdge> hyper_edges;  // sorted by (sources, targets)

    bool has_edge(int src, int dst) const;
};

MorseGraph morse_graph(const CostMatrix& costs, const PotentialProfile& prof, const Level& level,
                       double nu, bool with_hyper);

// Limit-set Morse graph of a node-exact system over the given components.
// omega(x) is the eventual forward cycle, alpha(x) the eventual cycle of the
// predecessor oracle (which must be present).
MorseGraph limit_set_morse_graph(const System& sys, const LevelComponents& comps,
                                 MorseGraph::Variant variant);

// Vertex map between two levels of the same filtration, by containment.
//   well_defined   every source component lies inside exactly one target one
//   edge_partial   every non-collapsed source edge maps onto a target edge
//   edge_surjective... and every target edge is such an image
struct CollapseMap {
    std::vector<int> vertex_map;  // -1 where containment fails
    bool well_defined = false;
    bool edge_partial = false;
    bool edge_surjective = false;
};

CollapseMap collapse_map(const MorseGraph& a, const MorseGraph& b);

// Abstract directed graph for the edge-collapse operation.
struct Digraph {
    std::vector<std::string> vertices;
    std::set<std::pair<int, int>> edges;

    int vertex(const std::string& label) const;
};

// Collapse the directed edge (a1, a2) into a fresh vertex: edges keep their
// untouched endpoints, endpoints inside {a1,a2} are re-targeted to the new
// vertex, and the reverse edge (a2, a1) becomes a loop.
Digraph edge_collapse(const Digraph& g, const std::string& a1, const std::string& a2,
                      const std::string& merged);

// Deterministic DOT rendering; vertices are named c0..c{k-1} in component
// order, hyper-edges appear as auxiliary diamond nodes.
std::string export_dot(const MorseGraph& g, const System& sys);

// True when the edge relation contains no directed cycle.
bool is_acyclic(const MorseGraph& g);

}  // namespace crr
