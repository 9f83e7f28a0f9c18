#include "crr/verify.hpp"

#include <cmath>
#include <limits>

#include "crr/diagram.hpp"
#include "crr/morsegraph.hpp"
#include "crr/recurrence.hpp"

namespace crr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Suite {
    std::vector<VerifyResult> results;
    void record(const std::string& name, bool pass, const std::string& detail = "") {
        results.push_back({name, pass, detail});
    }
};

// Deterministic index sampler, enough coverage without O(n^3) loops.
std::vector<int> sample_indices(int n, int want) {
    std::vector<int> idx;
    if (n <= want) {
        for (int i = 0; i < n; ++i) idx.push_back(i);
        return idx;
    }
    int stride = n / want;
    for (int i = 0; i < n; i += stride) idx.push_back(i);
    return idx;
}

}  // namespace

std::vector<VerifyResult> run_invariant_suite(const JobConfig& cfg) {
    Suite s;
    System sys = build_system_from_config(cfg);
    const MetricSpace& sp = sys.space();
    const int n = sys.size();

    {  // metric axioms on sampled triples
        auto idx = sample_indices(sp.size(), 24);
        bool ok = true;
        std::string msg;
        for (int i : idx) {
            if (sp.distance(i, i) != 0) { ok = false; msg = "nonzero diagonal"; break; }
            for (int j : idx) {
                if (sp.distance(i, j) != sp.distance(j, i)) { ok = false; msg = "asymmetry"; }
                for (int k : idx)
                    if (sp.distance(i, k) > sp.distance(i, j) + sp.distance(j, k) + 1e-12) {
                        ok = false;
                        msg = "triangle inequality";
                    }
            }
        }
        s.record("metric axioms", ok, msg);
    }

    CostMatrix c1 = compute_cost_matrix(sys, PNorm::one(), cfg.cap, cfg.resource_cap);
    CostMatrix c2 = compute_cost_matrix(sys, PNorm::two(), cfg.cap, cfg.resource_cap);
    CostMatrix ci = compute_cost_matrix(sys, PNorm::inf(), cfg.cap, cfg.resource_cap);
    c1.eta = c2.eta = ci.eta = cfg.eta;

    {  // one-step bound
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < n; ++j)
                if (c1.at(i, j) > sys.one_step_cost(i, j) + cfg.eta) { ok = false; break; }
        s.record("one-step bound", ok);
    }

    {  // composition on sampled triples
        auto idx = sample_indices(n, 24);
        bool ok = true;
        for (int i : idx)
            for (int j : idx)
                for (int k : idx) {
                    if (c1.at(i, k) > c1.at(i, j) + c1.at(j, k) + cfg.eta) ok = false;
                    if (ci.at(i, k) > std::max(ci.at(i, j), ci.at(j, k)) + cfg.eta) ok = false;
                }
        s.record("cost composition", ok);
    }

    {  // p-monotonicity
        bool ok = true;
        for (std::size_t t = 0; t < c1.rho.size(); ++t) {
            if (ci.rho[t] > c2.rho[t] + cfg.eta || c2.rho[t] > c1.rho[t] + cfg.eta) {
                ok = false;
                break;
            }
        }
        s.record("p-monotonicity", ok);
    }

    if (n <= 6) {  // oracle equivalence
        bool ok = true;
        for (const PNorm& p : {PNorm::one(), PNorm::two(), PNorm::inf()}) {
            CostMatrix cm = compute_cost_matrix(sys, p);
            for (int i = 0; i < n && ok; ++i)
                for (int j = 0; j < n; ++j)
                    if (cm.at(i, j) != brute_force_cost(sys, p, i, j, n)) { ok = false; break; }
        }
        s.record("brute-force oracle", ok);
    }

    PotentialProfile prof =
        cfg.theta_rec || cfg.eta_def
            ? potential_profile(c1, cfg.theta_rec.value_or(default_theta_rec(sys)),
                                cfg.eta_def.value_or(default_eta_def(
                                    cfg.theta_rec.value_or(default_theta_rec(sys)), cfg.eta)))
            : profile_for(sys, c1);

    {  // two-sided filtration over a ladder
        double top = 0;
        for (double t : prof.tau_pos)
            if (std::isfinite(t)) top = std::max(top, t);
        top = std::max(top, 1.0);
        std::vector<Level> ladder;
        for (int k = 20; k >= 0; --k) ladder.push_back(Level::neg(top * k / 20));
        for (int k = 0; k <= 20; ++k) ladder.push_back(Level::pos(top * k / 20));
        bool ok = true;
        std::vector<int> prev;
        for (const Level& lev : ladder) {
            std::vector<int> cur = cr_set(prof, lev);
            if (!std::includes(cur.begin(), cur.end(), prev.begin(), prev.end())) ok = false;
            prev = std::move(cur);
        }
        s.record("filtration nesting", ok);
    }

    {  // p-nesting of level sets at positive levels
        PotentialProfile p2 = potential_profile(c2, prof.theta_rec, prof.eta_def);
        PotentialProfile pi = potential_profile(ci, prof.theta_rec, prof.eta_def);
        bool ok = true;
        for (double eps : {0.0, 0.1, 0.5, 1.0}) {
            auto a = cr_set(prof, Level::pos(eps));
            auto b = cr_set(p2, Level::pos(eps));
            auto c = cr_set(pi, Level::pos(eps));
            if (!std::includes(b.begin(), b.end(), a.begin(), a.end())) ok = false;
            if (!std::includes(c.begin(), c.end(), b.begin(), b.end())) ok = false;
        }
        s.record("p-nesting", ok);
    }

    {  // diagram monotone along levels
        Diagram d = build_diagram_auto(prof);
        bool ok = true;
        for (int i = 0; i < d.n; ++i) {
            bool seen = false;
            for (std::size_t l = 0; l < d.levels.size(); ++l) {
                bool m = d.member(static_cast<int>(l), i);
                if (seen && !m) ok = false;
                seen = seen || m;
            }
        }
        s.record("diagram monotone", ok);
    }

    {  // collapse flags along increasing levels at the configured nu
        std::vector<double> crit = critical_values(c1);
        std::vector<Level> lv;
        lv.push_back(Level::pos(0));
        for (std::size_t k = 0; k < crit.size() && lv.size() < 6; k += std::max<std::size_t>(1, crit.size() / 5))
            lv.push_back(Level::pos(crit[k] + cfg.eta));
        std::sort(lv.begin(), lv.end());
        lv.erase(std::unique(lv.begin(), lv.end()), lv.end());
        bool ok = true;
        for (std::size_t k = 0; k + 1 < lv.size(); ++k) {
            MorseGraph ga = morse_graph(c1, prof, lv[k], cfg.nu, false);
            MorseGraph gb = morse_graph(c1, prof, lv[k + 1], cfg.nu, false);
            CollapseMap cm = collapse_map(ga, gb);
            if (!cm.well_defined || !cm.edge_partial) ok = false;
        }
        s.record("collapse (well-defined, edge-partial)", ok);
    }

    if (cfg.p.is_inf()) {  // acyclic Morse graphs for 0 <= nu <= eps
        PotentialProfile pi = potential_profile(ci, prof.theta_rec, prof.eta_def);
        double top = circulation_cost(pi);
        if (!std::isfinite(top)) top = 1.0;
        bool ok = true;
        for (int a = 1; a <= 3; ++a) {
            double eps = top * a / 3;
            for (int b = 0; b <= 2; ++b) {
                MorseGraph g = morse_graph(ci, pi, Level::pos(eps), eps * b / 2, false);
                if (!is_acyclic(g)) ok = false;
            }
        }
        s.record("Morse graph acyclic (p=inf)", ok);
    }

    {  // artifact determinism: same inputs, same bytes
        CostMatrix again = compute_cost_matrix(sys, PNorm::one(), cfg.cap, cfg.resource_cap);
        bool ok = again.rho == c1.rho;
        std::string csv1 = profile_csv(prof, sys);
        std::string csv2 = profile_csv(prof, sys);
        ok = ok && csv1 == csv2;
        s.record("determinism", ok);
    }

    return s.results;
}

}  // namespace crr
