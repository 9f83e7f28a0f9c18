#include "crr/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace crr {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

PotentialProfile potential_profile(const CostMatrix& costs, double theta_rec, double eta_def) {
    if (!(theta_rec >= 0) || std::isinf(theta_rec))
        throw std::invalid_argument("theta_rec must be finite and >= 0");
    if (!(eta_def >= 0) || std::isinf(eta_def))
        throw std::invalid_argument("eta_def must be finite and >= 0");
    const int n = costs.n;
    PotentialProfile prof;
    prof.p = costs.p;
    prof.theta_rec = theta_rec;
    prof.eta_def = eta_def;
    prof.eta = costs.eta;
    prof.tau_pos.resize(n);
    prof.defect.resize(n);
    prof.tau.resize(n);
    for (int i = 0; i < n; ++i) prof.tau_pos[i] = costs.at(i, i);
    for (int i = 0; i < n; ++i) {
        double d = kInf;
        for (int z = 0; z < n; ++z) {
            double fwd = costs.at(i, z);
            if (fwd >= d) continue;
            if (costs.at(z, i) > fwd + eta_def) d = fwd;
        }
        prof.defect[i] = d;
        prof.tau[i] = prof.tau_pos[i] > theta_rec ? Level::pos(prof.tau_pos[i]) : Level::neg(d);
    }
    return prof;
}

double default_theta_rec(const System& sys) {
    return sys.node_exact() ? 0.0 : 3.0 * sys.eta_grid_median();
}

double default_eta_def(double theta_rec, double eta) { return std::max(theta_rec, eta); }

PotentialProfile profile_for(const System& sys, const CostMatrix& costs) {
    double theta = default_theta_rec(sys);
    PotentialProfile prof = potential_profile(costs, theta, default_eta_def(theta, costs.eta));
    prof.eta_grid = sys.eta_grid();
    return prof;
}

bool cr_member(const PotentialProfile& prof, int node, const Level& level) {
    const Level& t = prof.tau[node];
    if (level.is_pos()) {
        if (t.is_neg()) return true;
        if (std::isinf(level.magnitude)) return true;  // CR_inf := X
        return t.magnitude <= level.magnitude + prof.eta;
    }
    if (t.is_pos()) return false;
    if (std::isinf(level.magnitude)) return std::isinf(t.magnitude);
    return t.magnitude > level.magnitude;
}

std::vector<int> cr_set(const PotentialProfile& prof, const Level& level) {
    std::vector<int> out;
    for (int i = 0; i < prof.size(); ++i)
        if (cr_member(prof, i, level)) out.push_back(i);
    return out;
}

LevelComponents components_at(const CostMatrix& costs, const PotentialProfile& prof,
                              const Level& level) {
    if (costs.n != prof.size())
        throw std::invalid_argument("profile and cost matrix sizes differ");
    LevelComponents lc;
    lc.level = level;
    lc.component_of.assign(costs.n, -1);

    std::vector<int> verts = cr_set(prof, level);
    const bool at_inf = level.is_pos() && std::isinf(level.magnitude);
    const double thr = level.is_pos() && !at_inf ? level.magnitude + prof.eta : prof.eta;

    auto mutual = [&](int u, int v) {
        if (at_inf) return std::isfinite(costs.at(u, v)) && std::isfinite(costs.at(v, u));
        return costs.at(u, v) <= thr && costs.at(v, u) <= thr;
    };

    // Connected components of the mutual-pair graph, discovered in ascending
    // vertex order so components come out sorted by smallest member.
    std::vector<int> stack;
    for (int seed : verts) {
        if (lc.component_of[seed] >= 0) continue;
        const int id = static_cast<int>(lc.members.size());
        lc.members.emplace_back();
        stack.push_back(seed);
        lc.component_of[seed] = id;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            lc.members[id].push_back(u);
            for (int v : verts) {
                if (lc.component_of[v] >= 0) continue;
                if (mutual(u, v)) {
                    lc.component_of[v] = id;
                    stack.push_back(v);
                }
            }
        }
        std::sort(lc.members[id].begin(), lc.members[id].end());
    }
    return lc;
}

std::vector<double> critical_values(const CostMatrix& costs) {
    const int n = costs.n;
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
    for (int i = 0; i < n; ++i) {
        double d = costs.at(i, i);
        if (std::isfinite(d)) vals.push_back(d);
        for (int j = 0; j < i; ++j) {
            double m = std::max(costs.at(i, j), costs.at(j, i));
            if (std::isfinite(m)) vals.push_back(m);
        }
    }
    std::sort(vals.begin(), vals.end());
    std::vector<double> out;
    for (double v : vals)
        if (out.empty() || v > out.back() + costs.eta) out.push_back(v);
    return out;
}

double circulation_cost(const PotentialProfile& prof) {
    double m = 0;
    for (double t : prof.tau_pos) {
        if (std::isinf(t)) return kInf;
        m = std::max(m, t);
    }
    return m;
}

std::vector<double> nonautonomous_potential(const CostMatrix& costs) {
    if (!costs.layered())
        throw std::invalid_argument("nonautonomous_potential needs a layered cost matrix");
    const int n = costs.n;
    const int sn = costs.space_nodes;
    std::vector<double> pot(n, kInf);
    for (int i = 0; i < n; ++i) {
        const int li = costs.layer[i];
        const int si = i % sn;
        for (int j = 0; j < n; ++j) {
            if (costs.layer[j] <= li || j % sn != si) continue;
            pot[i] = std::min(pot[i], costs.at(i, j));
        }
    }
    return pot;
}

}  // namespace crr
