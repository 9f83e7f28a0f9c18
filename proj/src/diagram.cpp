#include "crr/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <stdexcept>

#include "crr/chaincost.hpp"
#include "crr/morsegraph.hpp"

namespace crr {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string fmt_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

nlohmann::json json_num(double v) {
    if (std::isinf(v)) return v > 0 ? nlohmann::json("inf") : nlohmann::json("-inf");
    return nlohmann::json(v);
}

std::string fmt_prec(double v, int precision) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

}  // namespace

Diagram build_diagram(const PotentialProfile& prof, std::vector<Level> levels) {
    if (levels.empty()) throw std::invalid_argument("diagram needs a non-empty level grid");
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    Diagram d;
    d.levels = std::move(levels);
    d.n = prof.size();
    d.membership.resize(d.levels.size() * static_cast<std::size_t>(d.n));
    for (std::size_t l = 0; l < d.levels.size(); ++l)
        for (int i = 0; i < d.n; ++i)
            d.membership[l * d.n + i] = cr_member(prof, i, d.levels[l]) ? 1 : 0;
    return d;
}

Diagram build_diagram_auto(const PotentialProfile& prof) {
    std::vector<Level> levels;
    levels.push_back(Level::neg_inf());
    levels.push_back(Level::neg(0));
    levels.push_back(Level::pos(0));
    std::set<double> defects, taus;
    for (int i = 0; i < prof.size(); ++i) {
        if (prof.tau[i].is_neg() && std::isfinite(prof.defect[i])) defects.insert(prof.defect[i]);
        if (std::isfinite(prof.tau_pos[i])) taus.insert(prof.tau_pos[i]);
    }
    for (double v : defects) levels.push_back(Level::neg(v));
    for (double v : taus) levels.push_back(Level::pos(v));
    return build_diagram(prof, std::move(levels));
}

std::string render_svg(const Diagram& diag, const MetricSpace& space, const SvgStyle& style) {
    if (space.dim() != 1 || !space.has_ambient())
        throw std::invalid_argument(
            "SVG rendering needs a 1-D interval or circle space; use diagram_csv for tables");
    if (space.size() != diag.n) throw std::invalid_argument("diagram and space sizes differ");

    const int W = style.width, H = style.height;
    const int ml = 60, mr = 15, mt = 15, mb = 40;  // margins
    const int hatch_band = 16;                     // NEG(inf) strip

    double x_lo = space.point(0)[0], x_hi = space.point(space.size() - 1)[0];
    for (int i = 0; i < space.size(); ++i) {
        x_lo = std::min(x_lo, space.point(i)[0]);
        x_hi = std::max(x_hi, space.point(i)[0]);
    }
    double half = space.grid_step() > 0 ? space.grid_step() / 2 : (x_hi - x_lo) * 0.01;
    x_lo -= half;
    x_hi += half;
    if (!std::isnan(style.xmin)) x_lo = style.xmin;
    if (!std::isnan(style.xmax)) x_hi = style.xmax;

    double y_lo = kInf, y_hi = -kInf;
    bool has_neg_inf = false;
    for (const Level& l : diag.levels) {
        if (std::isinf(l.magnitude)) {
            if (l.is_neg()) has_neg_inf = true;
            continue;
        }
        y_lo = std::min(y_lo, l.embed());
        y_hi = std::max(y_hi, l.embed());
    }
    if (y_lo > y_hi) { y_lo = 0; y_hi = 1; }
    if (y_hi == y_lo) y_hi = y_lo + 1;
    double pad = (y_hi - y_lo) * 0.05;
    y_hi += pad;
    if (!std::isnan(style.ymin)) y_lo = style.ymin;
    if (!std::isnan(style.ymax)) y_hi = style.ymax;

    const double px = (W - ml - mr) / (x_hi - x_lo);
    const int plot_h = H - mt - mb - (has_neg_inf ? hatch_band : 0);
    const double py = plot_h / (y_hi - y_lo);
    auto X = [&](double x) { return ml + (x - x_lo) * px; };
    auto Y = [&](double y) { return mt + (y_hi - y) * py; };  // y grows upward

    const int prec = style.precision;
    std::string svg;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"%d\" "
                  "height=\"%d\" viewBox=\"0 0 %d %d\">\n",
                  W, H, W, H);
    svg += buf;
    svg +=
        "<defs><pattern id=\"hatch\" width=\"6\" height=\"6\" "
        "patternUnits=\"userSpaceOnUse\" patternTransform=\"rotate(45)\">"
        "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#406080\" "
        "stroke-width=\"2\"/></pattern></defs>\n";
    std::snprintf(buf, sizeof buf, "<rect x=\"0\" y=\"0\" width=\"%d\" height=\"%d\" fill=\"white\"/>\n",
                  W, H);
    svg += buf;

    auto emit_runs = [&](std::size_t level_idx, double y_top, double y_bot,
                         const char* fill) {
        int i = 0;
        while (i < diag.n) {
            if (!diag.member(static_cast<int>(level_idx), i)) { ++i; continue; }
            int j = i;
            while (j + 1 < diag.n && diag.member(static_cast<int>(level_idx), j + 1)) ++j;
            double rx0 = X(space.point(i)[0] - half);
            double rx1 = X(space.point(j)[0] + half);
            std::snprintf(buf, sizeof buf,
                          "<rect x=\"%s\" y=\"%s\" width=\"%s\" height=\"%s\" fill=\"%s\"/>\n",
                          fmt_prec(rx0, prec).c_str(), fmt_prec(y_top, prec).c_str(),
                          fmt_prec(rx1 - rx0, prec).c_str(),
                          fmt_prec(std::max(0.5, y_bot - y_top), prec).c_str(), fill);
            svg += buf;
            i = j + 1;
        }
    };

    for (std::size_t l = 0; l < diag.levels.size(); ++l) {
        const Level& lev = diag.levels[l];
        if (std::isinf(lev.magnitude) && lev.is_neg()) {
            // bottom clip with a distinct hatch
            emit_runs(l, static_cast<double>(H - mb - hatch_band), static_cast<double>(H - mb),
                      "url(#hatch)");
            continue;
        }
        if (std::isinf(lev.magnitude)) continue;
        double top_embed = y_hi;
        for (std::size_t l2 = l + 1; l2 < diag.levels.size(); ++l2) {
            if (std::isinf(diag.levels[l2].magnitude)) continue;
            top_embed = diag.levels[l2].embed();
            break;
        }
        double y_top = Y(std::min(top_embed, y_hi));
        double y_bot = Y(std::max(lev.embed(), y_lo));
        if (y_bot <= y_top) continue;
        emit_runs(l, y_top, y_bot, "#6090c0");
    }

    // axes
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n", ml,
                  H - mb, W - mr, H - mb);
    svg += buf;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n", ml, mt,
                  ml, H - mb);
    svg += buf;
    for (int t = 0; t <= 4; ++t) {
        double xv = x_lo + (x_hi - x_lo) * t / 4;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%s\" y=\"%d\" font-size=\"11\" text-anchor=\"middle\">%s</text>\n",
                      fmt_prec(X(xv), prec).c_str(), H - mb + 15, fmt_prec(xv, prec).c_str());
        svg += buf;
        double yv = y_lo + (y_hi - y_lo) * t / 4;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%d\" y=\"%s\" font-size=\"11\" text-anchor=\"end\">%s</text>\n",
                      ml - 5, fmt_prec(Y(yv) + 4, prec).c_str(), fmt_prec(yv, prec).c_str());
        svg += buf;
    }
    if (has_neg_inf) {
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%d\" y=\"%d\" font-size=\"11\" text-anchor=\"end\">-inf</text>\n",
                      ml - 5, H - mb - hatch_band / 2 + 4);
        svg += buf;
    }
    svg += "</svg>\n";
    return svg;
}

namespace {

std::string coords_header(const System& sys) {
    int d = static_cast<int>(sys.export_coords(0).size());
    std::string h;
    for (int a = 0; a < d; ++a) h += ",coord" + std::to_string(a);
    return h;
}

std::string coords_row(const System& sys, int i) {
    std::string r;
    for (double v : sys.export_coords(i)) r += "," + fmt_double(v);
    return r;
}

}  // namespace

std::string diagram_csv(const Diagram& diag, const System& sys) {
    std::string out = "level_branch,level_magnitude,node" + coords_header(sys) + ",member\n";
    for (std::size_t l = 0; l < diag.levels.size(); ++l) {
        const Level& lev = diag.levels[l];
        std::string prefix = std::string(lev.is_neg() ? "NEG" : "POS") + "," +
                             fmt_double(lev.magnitude) + ",";
        for (int i = 0; i < diag.n; ++i)
            out += prefix + std::to_string(i) + coords_row(sys, i) + "," +
                   (diag.member(static_cast<int>(l), i) ? "1" : "0") + "\n";
    }
    return out;
}

nlohmann::json diagram_json(const Diagram& diag, const System& sys) {
    nlohmann::json j;
    j["n"] = diag.n;
    j["levels"] = nlohmann::json::array();
    j["membership"] = nlohmann::json::array();
    for (std::size_t l = 0; l < diag.levels.size(); ++l) {
        j["levels"].push_back(diag.levels[l].str());
        nlohmann::json row = nlohmann::json::array();
        for (int i = 0; i < diag.n; ++i) row.push_back(diag.member(static_cast<int>(l), i) ? 1 : 0);
        j["membership"].push_back(row);
    }
    nlohmann::json coords = nlohmann::json::array();
    for (int i = 0; i < diag.n; ++i) coords.push_back(sys.export_coords(i));
    j["coords"] = coords;
    return j;
}

std::string profile_csv(const PotentialProfile& prof, const System& sys) {
    std::string out = "node_index" + coords_header(sys) + ",tau_pos,defect,tau_branch,tau_magnitude\n";
    for (int i = 0; i < prof.size(); ++i) {
        out += std::to_string(i) + coords_row(sys, i) + "," + fmt_double(prof.tau_pos[i]) + "," +
               fmt_double(prof.defect[i]) + "," + (prof.tau[i].is_neg() ? "NEG" : "POS") + "," +
               fmt_double(prof.tau[i].magnitude) + "\n";
    }
    return out;
}

nlohmann::json profile_json(const PotentialProfile& prof, const System& sys) {
    nlohmann::json j;
    j["n"] = prof.size();
    j["p"] = prof.p.str();
    j["theta_rec"] = prof.theta_rec;
    j["eta_def"] = prof.eta_def;
    j["eta"] = prof.eta;
    j["eta_grid"] = prof.eta_grid;
    nlohmann::json tp = nlohmann::json::array(), df = nlohmann::json::array(),
                   tb = nlohmann::json::array(), tm = nlohmann::json::array(),
                   coords = nlohmann::json::array();
    for (int i = 0; i < prof.size(); ++i) {
        tp.push_back(json_num(prof.tau_pos[i]));
        df.push_back(json_num(prof.defect[i]));
        tb.push_back(prof.tau[i].is_neg() ? "NEG" : "POS");
        tm.push_back(json_num(prof.tau[i].magnitude));
        coords.push_back(sys.export_coords(i));
    }
    j["tau_pos"] = tp;
    j["defect"] = df;
    j["tau_branch"] = tb;
    j["tau_magnitude"] = tm;
    j["coords"] = coords;
    return j;
}

std::string components_csv(const LevelComponents& comps) {
    std::string out = "component,node\n";
    for (std::size_t c = 0; c < comps.members.size(); ++c)
        for (int v : comps.members[c]) out += std::to_string(c) + "," + std::to_string(v) + "\n";
    return out;
}

nlohmann::json components_json(const LevelComponents& comps) {
    nlohmann::json j;
    j["level"] = comps.level.str();
    j["components"] = comps.members;
    j["component_of"] = comps.component_of;
    return j;
}

nlohmann::json morse_graph_json(const MorseGraph& g, const System& sys) {
    nlohmann::json j;
    j["level"] = g.level.str();
    j["nu"] = g.nu;
    j["p"] = g.p.str();
    switch (g.variant) {
        case MorseGraph::Variant::NuError: j["variant"] = "nu-error"; break;
        case MorseGraph::Variant::LimitSetG: j["variant"] = "limit-set-G"; break;
        case MorseGraph::Variant::LimitSetGPrime: j["variant"] = "limit-set-G-prime"; break;
    }
    nlohmann::json verts = nlohmann::json::array();
    for (std::size_t c = 0; c < g.vertices.size(); ++c) {
        nlohmann::json v;
        v["id"] = c;
        v["size"] = g.vertices[c].size();
        v["members"] = g.vertices[c];
        v["repr"] = sys.export_coords(g.vertices[c].front());
        verts.push_back(v);
    }
    j["vertices"] = verts;
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : g.edges)
        edges.push_back({{"src", e.src}, {"dst", e.dst}, {"witness", e.witness}});
    j["edges"] = edges;
    nlohmann::json hyper = nlohmann::json::array();
    for (const auto& h : g.hyper_edges)
        hyper.push_back({{"A", h.sources}, {"W", h.targets}, {"witness", h.witness}});
    j["hyper_edges"] = hyper;
    return j;
}

std::string nonautonomous_potential_csv(const CostMatrix& costs, const System& sys) {
    std::vector<double> pot = nonautonomous_potential(costs);
    std::string out = "layer,node" + coords_header(sys) + ",potential\n";
    for (int i = 0; i < costs.n; ++i)
        out += std::to_string(costs.layer[i]) + "," + std::to_string(i % costs.space_nodes) +
               coords_row(sys, i) + "," + fmt_double(pot[i]) + "\n";
    return out;
}

SweepResult parameter_sweep(const std::function<System(double)>& family,
                            const std::vector<double>& values, PNorm p,
                            const std::vector<Level>& levels) {
    if (levels.empty()) throw std::invalid_argument("sweep needs an explicit level grid");
    SweepResult out;
    out.levels = levels;
    std::sort(out.levels.begin(), out.levels.end());
    for (double mu : values) {
        try {
            System sys = family(mu);
            CostMatrix costs = compute_cost_matrix(sys, p);
            SweepEntry e;
            e.mu = mu;
            e.profile = profile_for(sys, costs);
            e.circulation = circulation_cost(e.profile);
            e.diagram = build_diagram(e.profile, out.levels);
            out.entries.push_back(std::move(e));
        } catch (const std::exception& ex) {
            throw std::runtime_error("sweep member mu=" + fmt_double(mu) + " failed: " +
                                     ex.what());
        }
    }
    return out;
}

std::string sweep_csv(const SweepResult& sweep) {
    std::string out = "mu,level_branch,level_magnitude,node,member\n";
    for (const auto& e : sweep.entries) {
        for (std::size_t l = 0; l < e.diagram.levels.size(); ++l) {
            const Level& lev = e.diagram.levels[l];
            std::string prefix = fmt_double(e.mu) + "," + (lev.is_neg() ? "NEG" : "POS") + "," +
                                 fmt_double(lev.magnitude) + ",";
            for (int i = 0; i < e.diagram.n; ++i)
                out += prefix + std::to_string(i) + "," +
                       (e.diagram.member(static_cast<int>(l), i) ? "1" : "0") + "\n";
        }
    }
    return out;
}

nlohmann::json sweep_json(const SweepResult& sweep) {
    nlohmann::json j;
    nlohmann::json levels = nlohmann::json::array();
    for (const Level& l : sweep.levels) levels.push_back(l.str());
    j["levels"] = levels;
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : sweep.entries) {
        nlohmann::json je;
        je["mu"] = e.mu;
        je["circulation"] = json_num(e.circulation);
        nlohmann::json mem = nlohmann::json::array();
        for (std::size_t l = 0; l < e.diagram.levels.size(); ++l) {
            nlohmann::json row = nlohmann::json::array();
            for (int i = 0; i < e.diagram.n; ++i)
                row.push_back(e.diagram.member(static_cast<int>(l), i) ? 1 : 0);
            mem.push_back(row);
        }
        je["membership"] = mem;
        entries.push_back(je);
    }
    j["entries"] = entries;
    return j;
}

}  // namespace crr
