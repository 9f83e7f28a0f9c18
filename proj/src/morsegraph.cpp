#include "crr/morsegraph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>

namespace crr {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

bool MorseGraph::has_edge(int src, int dst) const {
    for (const Edge& e : edges)
        if (e.src == src && e.dst == dst) return true;
    return false;
}

MorseGraph morse_graph(const CostMatrix& costs, const PotentialProfile& prof, const Level& level,
                       double nu, bool with_hyper) {
    if (!(nu >= 0)) throw std::invalid_argument("nu must be >= 0");
    LevelComponents comps = components_at(costs, prof, level);
    const int n = costs.n;
    const int k = static_cast<int>(comps.members.size());

    MorseGraph g;
    g.level = level;
    g.nu = nu;
    g.p = costs.p;
    g.variant = MorseGraph::Variant::NuError;
    g.vertices = comps.members;

    // in_cost[c][x] = min cost from component c to node x,
    // out_cost[c][x] = min cost from node x into component c.
    std::vector<std::vector<double>> in_cost(k, std::vector<double>(n, kInf));
    std::vector<std::vector<double>> out_cost(k, std::vector<double>(n, kInf));
    for (int c = 0; c < k; ++c) {
        for (int m : comps.members[c]) {
            for (int x = 0; x < n; ++x) {
                in_cost[c][x] = std::min(in_cost[c][x], costs.at(m, x));
                out_cost[c][x] = std::min(out_cost[c][x], costs.at(x, m));
            }
        }
    }

    const double thr = nu + prof.eta;
    std::map<std::pair<int, int>, int> edge_witness;
    std::map<std::pair<std::vector<int>, std::vector<int>>, int> hyper_witness;
    std::vector<int> A, W;
    for (int x = 0; x < n; ++x) {
        A.clear();
        W.clear();
        for (int c = 0; c < k; ++c) {
            if (in_cost[c][x] <= thr) A.push_back(c);
            if (out_cost[c][x] <= thr) W.push_back(c);
        }
        if (A.empty() || W.empty()) continue;
        for (int a : A)
            for (int w : W)
                if (a != w) edge_witness.emplace(std::pair{a, w}, x);
        if (with_hyper) hyper_witness.emplace(std::pair{A, W}, x);
    }

    for (const auto& [e, x] : edge_witness) g.edges.push_back({e.first, e.second, x});
    for (const auto& [hw, x] : hyper_witness)
        g.hyper_edges.push_back({hw.first, hw.second, x});
    return g;
}

namespace {

// Eventual cycle of `start` under a successor function, as a sorted node set.
std::vector<int> eventual_cycle(int start, const std::vector<int>& succ) {
    std::vector<int> order;
    std::vector<int> seen(succ.size(), -1);
    int u = start;
    while (seen[u] < 0) {
        seen[u] = static_cast<int>(order.size());
        order.push_back(u);
        u = succ[u];
    }
    std::vector<int> cycle(order.begin() + seen[u], order.end());
    std::sort(cycle.begin(), cycle.end());
    return cycle;
}

}  // namespace

MorseGraph limit_set_morse_graph(const System& sys, const LevelComponents& comps,
                                 MorseGraph::Variant variant) {
    if (variant == MorseGraph::Variant::NuError)
        throw std::invalid_argument("limit_set_morse_graph builds the limit-set variants");
    if (!sys.node_exact())
        throw std::invalid_argument("limit-set graphs need a node-exact system");
    if (!sys.has_predecessor_oracle())
        throw std::invalid_argument(
            "limit-set graphs need an inverse (predecessor) oracle; none is installed");

    const int n = sys.size();
    std::vector<int> fwd(n), bwd(n);
    for (int i = 0; i < n; ++i) {
        fwd[i] = sys.forward_node(i);
        bwd[i] = sys.predecessor(i);
    }

    MorseGraph g;
    g.level = comps.level;
    g.p = PNorm::one();
    g.variant = variant;
    g.vertices = comps.members;
    const int k = static_cast<int>(comps.members.size());

    std::map<std::pair<int, int>, int> edge_witness;
    std::vector<int> aset, wset;
    for (int x = 0; x < n; ++x) {
        if (variant == MorseGraph::Variant::LimitSetGPrime && comps.component_of[x] >= 0)
            continue;  // D' witnesses live outside every component
        std::vector<int> omega = eventual_cycle(x, fwd);
        std::vector<int> alpha = eventual_cycle(x, bwd);
        aset.clear();
        wset.clear();
        for (int c = 0; c < k; ++c) {
            const auto& mem = comps.members[c];
            auto meets = [&](const std::vector<int>& cyc) {
                for (int v : cyc)
                    if (std::binary_search(mem.begin(), mem.end(), v)) return true;
                return false;
            };
            if (meets(alpha)) aset.push_back(c);
            if (meets(omega)) wset.push_back(c);
        }
        for (int a : aset)
            for (int w : wset)
                if (a != w) edge_witness.emplace(std::pair{a, w}, x);
    }
    for (const auto& [e, x] : edge_witness) g.edges.push_back({e.first, e.second, x});
    return g;
}

CollapseMap collapse_map(const MorseGraph& a, const MorseGraph& b) {
    if (!(a.level < b.level))
        throw std::invalid_argument("collapse maps run from a lower level to a higher one");
    if (a.variant != b.variant) throw std::invalid_argument("collapse across mixed graph variants");
    if (a.variant == MorseGraph::Variant::NuError && a.nu != b.nu)
        throw std::invalid_argument("collapse maps need the same nu on both levels");

    // Node -> target component lookup.
    int n = 0;
    for (const auto& m : b.vertices)
        for (int v : m) n = std::max(n, v + 1);
    for (const auto& m : a.vertices)
        for (int v : m) n = std::max(n, v + 1);
    std::vector<int> target_of(n, -1);
    for (int c = 0; c < static_cast<int>(b.vertices.size()); ++c)
        for (int v : b.vertices[c]) target_of[v] = c;

    CollapseMap cm;
    cm.vertex_map.assign(a.vertices.size(), -1);
    cm.well_defined = true;
    for (int c = 0; c < static_cast<int>(a.vertices.size()); ++c) {
        int tgt = -2;
        for (int v : a.vertices[c]) {
            int t = target_of[v];
            if (tgt == -2) tgt = t;
            else if (t != tgt) tgt = -1;
        }
        if (tgt < 0) cm.well_defined = false;  // straddles targets or left the filtration
        cm.vertex_map[c] = tgt < 0 ? -1 : tgt;
    }

    cm.edge_partial = cm.well_defined;
    if (cm.edge_partial) {
        for (const auto& e : a.edges) {
            int s = cm.vertex_map[e.src], d = cm.vertex_map[e.dst];
            if (s == d) continue;  // collapsed into a loop, dropped by f_D
            if (!b.has_edge(s, d)) { cm.edge_partial = false; break; }
        }
    }

    cm.edge_surjective = cm.edge_partial;
    if (cm.edge_surjective) {
        for (const auto& e : b.edges) {
            bool hit = false;
            for (const auto& f : a.edges) {
                int s = cm.vertex_map[f.src], d = cm.vertex_map[f.dst];
                if (s != d && s == e.src && d == e.dst) { hit = true; break; }
            }
            if (!hit) { cm.edge_surjective = false; break; }
        }
    }
    return cm;
}

int Digraph::vertex(const std::string& label) const {
    for (int i = 0; i < static_cast<int>(vertices.size()); ++i)
        if (vertices[i] == label) return i;
    return -1;
}

Digraph edge_collapse(const Digraph& g, const std::string& a1, const std::string& a2,
                      const std::string& merged) {
    int i1 = g.vertex(a1), i2 = g.vertex(a2);
    if (i1 < 0 || i2 < 0 || i1 == i2) throw std::invalid_argument("collapse endpoints must be distinct vertices");
    if (!g.edges.count({i1, i2})) throw std::invalid_argument("edge to collapse is absent");

    Digraph out;
    std::vector<int> remap(g.vertices.size(), -1);
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
        if (v == i1 || v == i2) continue;
        remap[v] = static_cast<int>(out.vertices.size());
        out.vertices.push_back(g.vertices[v]);
    }
    const int a = static_cast<int>(out.vertices.size());
    out.vertices.push_back(merged);
    remap[i1] = remap[i2] = a;

    for (const auto& [x, y] : g.edges) {
        if (x == i1 && y == i2) continue;  // the collapsed edge itself
        bool xin = (x == i1 || x == i2), yin = (y == i1 || y == i2);
        if (!xin && !yin) out.edges.insert({remap[x], remap[y]});
        else if (x == i2 && y == i1) out.edges.insert({a, a});
        else if (xin && !yin) out.edges.insert({a, remap[y]});
        else if (!xin && yin) out.edges.insert({remap[x], a});
        else out.edges.insert({a, a});  // loop at an endpoint
    }
    return out;
}

bool is_acyclic(const MorseGraph& g) {
    const int k = static_cast<int>(g.vertices.size());
    std::vector<std::vector<int>> adj(k);
    std::vector<int> indeg(k, 0);
    for (const auto& e : g.edges) {
        adj[e.src].push_back(e.dst);
        ++indeg[e.dst];
    }
    std::vector<int> queue;
    for (int v = 0; v < k; ++v)
        if (indeg[v] == 0) queue.push_back(v);
    int seen = 0;
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        ++seen;
        for (int w : adj[v])
            if (--indeg[w] == 0) queue.push_back(w);
    }
    return seen == k;
}

std::string export_dot(const MorseGraph& g, const System& sys) {
    char buf[128];
    std::string out = "digraph morse {\n";
    std::snprintf(buf, sizeof buf, "  // level=%s nu=%.6g p=%s\n", g.level.str().c_str(), g.nu,
                  g.p.str().c_str());
    out += buf;
    for (int c = 0; c < static_cast<int>(g.vertices.size()); ++c) {
        const auto& mem = g.vertices[c];
        std::string repr = "(";
        std::vector<double> coords = sys.export_coords(mem.front());
        for (std::size_t a = 0; a < coords.size(); ++a) {
            std::snprintf(buf, sizeof buf, "%s%.6g", a ? "," : "", coords[a]);
            repr += buf;
        }
        repr += ")";
        std::snprintf(buf, sizeof buf, "  c%d [label=\"c%d\\nsize=%zu\\nrepr=%s\"];\n", c, c,
                      mem.size(), repr.c_str());
        out += buf;
    }
    for (const auto& e : g.edges) {
        std::snprintf(buf, sizeof buf, "  c%d -> c%d; // witness %d\n", e.src, e.dst, e.witness);
        out += buf;
    }
    for (std::size_t h = 0; h < g.hyper_edges.size(); ++h) {
        const auto& he = g.hyper_edges[h];
        std::snprintf(buf, sizeof buf, "  h%zu [shape=diamond,label=\"x%d\"];\n", h, he.witness);
        out += buf;
        for (int a : he.sources) {
            std::snprintf(buf, sizeof buf, "  c%d -> h%zu [style=dashed];\n", a, h);
            out += buf;
        }
        for (int w : he.targets) {
            std::snprintf(buf, sizeof buf, "  h%zu -> c%d [style=dashed];\n", h, w);
            out += buf;
        }
    }
    out += "}\n";
    return out;
}

}  // namespace crr
