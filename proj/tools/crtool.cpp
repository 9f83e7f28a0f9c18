#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crr/config.hpp"
#include "crr/diagram.hpp"
#include "crr/errors.hpp"
#include "crr/fixtures.hpp"
#include "crr/morsegraph.hpp"
#include "crr/verify.hpp"

namespace {

using namespace crr;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("short write to " + path);
}

std::vector<Level> parse_level_list(const std::string& csv) {
    std::vector<Level> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(Level::parse(tok));
    }
    if (out.empty()) throw std::invalid_argument("empty level list");
    return out;
}

struct Job {
    JobConfig cfg;
    System sys;
    CostMatrix costs;
    PotentialProfile prof;
};

Job run_job(const std::string& config_path) {
    Job job{parse_config_file(config_path), System{}, CostMatrix{}, PotentialProfile{}};
    job.sys = build_system_from_config(job.cfg);
    job.costs = compute_cost_matrix(job.sys, job.cfg.p, job.cfg.cap, job.cfg.resource_cap);
    job.costs.eta = job.cfg.eta;
    double theta = job.cfg.theta_rec.value_or(default_theta_rec(job.sys));
    double eta_def = job.cfg.eta_def.value_or(default_eta_def(theta, job.cfg.eta));
    job.prof = potential_profile(job.costs, theta, eta_def);
    job.prof.eta_grid = job.sys.eta_grid();
    return job;
}

std::string output_path(const Job& job, const std::string& flag_value, const std::string& key) {
    if (!flag_value.empty()) return flag_value;
    auto it = job.cfg.outputs.find(key);
    return it == job.cfg.outputs.end() ? "" : it->second;
}

int cmd_examples() {
    std::printf("maps (system kind \"map\"):\n");
    for (const auto& e : map_registry())
        std::printf("  %-24s params: %-28s %s\n", e.name.c_str(), e.params.c_str(), e.doc.c_str());
    std::printf("vector fields (system kind \"flow\"):\n");
    for (const auto& e : field_registry())
        std::printf("  %-24s params: %-28s %s\n", e.name.c_str(), e.params.c_str(), e.doc.c_str());
    std::printf("nonautonomous step families:\n");
    for (const auto& e : nonautonomous_registry())
        std::printf("  %-24s params: %-28s %s\n", e.name.c_str(), e.params.c_str(), e.doc.c_str());
    std::printf("self-contained system kinds:\n");
    std::printf("  %-24s params: %-28s %s\n", "counterexample_A", "epsilon>0, N>=2",
                "two fixed columns plus an exactly stepped arc in the plane");
    std::printf("  %-24s params: %-28s %s\n", "example_non_increasing", "N>=2",
                "alpha/omega chain whose plain Morse graph loses its edge");
    std::printf("builtin fixtures (library/tests):\n ");
    for (const auto& n : fixture_names()) std::printf(" %s", n.c_str());
    std::printf("\n");
    return 0;
}

int cmd_potential(const Job& job, const std::string& out_csv, const std::string& out_json) {
    // Layered systems report the time-advancing return potential; the plain
    // diagonal one is degenerate there (no chain stays inside one layer).
    std::string csv = job.costs.layered() ? nonautonomous_potential_csv(job.costs, job.sys)
                                          : profile_csv(job.prof, job.sys);
    std::string csv_path = output_path(job, out_csv, "profile_csv");
    std::string json_path = output_path(job, out_json, "profile_json");
    if (csv_path.empty() && json_path.empty()) {
        std::cout << csv;
        return 0;
    }
    if (!csv_path.empty()) write_file(csv_path, csv);
    if (!json_path.empty())
        write_file(json_path, profile_json(job.prof, job.sys).dump(2) + "\n");
    return 0;
}

int cmd_components(const Job& job, const std::string& levels_csv, const std::string& out_json) {
    std::vector<Level> levels = levels_csv.empty()
                                    ? resolve_levels(job.cfg, job.costs)
                                    : parse_level_list(levels_csv);
    nlohmann::json doc;
    doc["levels"] = nlohmann::json::array();
    for (const Level& lev : levels)
        doc["levels"].push_back(components_json(components_at(job.costs, job.prof, lev)));
    std::string path = output_path(job, out_json, "components_json");
    if (path.empty()) std::cout << doc.dump(2) << "\n";
    else write_file(path, doc.dump(2) + "\n");
    return 0;
}

int cmd_morse(const Job& job, const std::string& eps_tok, double nu, bool with_hyper,
              const std::string& out_dot, const std::string& out_json) {
    Level eps = Level::parse(eps_tok);
    MorseGraph g = morse_graph(job.costs, job.prof, eps, nu, with_hyper);
    std::string dot_path = output_path(job, out_dot, "morse_dot");
    std::string json_path = output_path(job, out_json, "morse_json");
    if (dot_path.empty() && json_path.empty()) {
        std::cout << export_dot(g, job.sys);
        return 0;
    }
    if (!dot_path.empty()) write_file(dot_path, export_dot(g, job.sys));
    if (!json_path.empty()) write_file(json_path, morse_graph_json(g, job.sys).dump(2) + "\n");
    return 0;
}

int cmd_collapse(const Job& job, const std::string& levels_csv, double nu,
                 const std::string& out_json) {
    std::vector<Level> levels = parse_level_list(levels_csv);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    if (levels.size() < 2) throw std::invalid_argument("collapse needs at least two levels");

    std::vector<MorseGraph> graphs;
    for (const Level& lev : levels)
        graphs.push_back(morse_graph(job.costs, job.prof, lev, nu, false));

    nlohmann::json doc;
    doc["nu"] = nu;
    doc["levels"] = nlohmann::json::array();
    for (const Level& lev : levels) doc["levels"].push_back(lev.str());
    doc["steps"] = nlohmann::json::array();
    bool all_ok = true;
    std::vector<CollapseMap> step_maps;
    for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
        CollapseMap cm = collapse_map(graphs[k], graphs[k + 1]);
        step_maps.push_back(cm);
        all_ok = all_ok && cm.well_defined && cm.edge_partial;
        nlohmann::json js;
        js["from"] = levels[k].str();
        js["to"] = levels[k + 1].str();
        js["vertices_from"] = graphs[k].vertices.size();
        js["vertices_to"] = graphs[k + 1].vertices.size();
        js["well_defined"] = cm.well_defined;
        js["edge_partial"] = cm.edge_partial;
        js["edge_surjective"] = cm.edge_surjective;
        js["vertex_map"] = cm.vertex_map;
        doc["steps"].push_back(js);
        std::printf("%s -> %s : vertices %zu -> %zu, well_defined=%s, edge_partial=%s, "
                    "edge_surjective=%s\n",
                    levels[k].str().c_str(), levels[k + 1].str().c_str(),
                    graphs[k].vertices.size(), graphs[k + 1].vertices.size(),
                    cm.well_defined ? "yes" : "no", cm.edge_partial ? "yes" : "no",
                    cm.edge_surjective ? "yes" : "no");
    }

    // Cocycle: composing consecutive maps equals the direct map.
    bool cocycle = true;
    for (std::size_t k = 0; k + 2 < levels.size(); ++k) {
        CollapseMap direct = collapse_map(graphs[k], graphs[k + 2]);
        for (std::size_t v = 0; v < graphs[k].vertices.size(); ++v) {
            int via = step_maps[k].vertex_map[v];
            int composed = via >= 0 ? step_maps[k + 1].vertex_map[via] : -1;
            if (composed != direct.vertex_map[v]) cocycle = false;
        }
    }
    doc["cocycle"] = cocycle;
    std::printf("cocycle identity: %s\n", cocycle ? "yes" : "no");

    std::string path = output_path(job, out_json, "collapse_json");
    if (!path.empty()) write_file(path, doc.dump(2) + "\n");
    (void)all_ok;
    return 0;
}

int cmd_diagram(const Job& job, const std::string& out_svg, const std::string& out_csv,
                const std::string& out_json) {
    Diagram d = job.cfg.levels_auto ? build_diagram_auto(job.prof)
                                    : build_diagram(job.prof, job.cfg.levels);
    std::string svg_path = output_path(job, out_svg, "diagram_svg");
    std::string csv_path = output_path(job, out_csv, "diagram_csv");
    std::string json_path = output_path(job, out_json, "diagram_json");
    if (svg_path.empty() && csv_path.empty() && json_path.empty()) {
        std::cout << diagram_csv(d, job.sys);
        return 0;
    }
    if (!svg_path.empty()) write_file(svg_path, render_svg(d, job.sys.space()));
    if (!csv_path.empty()) write_file(csv_path, diagram_csv(d, job.sys));
    if (!json_path.empty()) write_file(json_path, diagram_json(d, job.sys).dump(2) + "\n");
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& param,
              const std::string& values_csv, const std::string& out_csv,
              const std::string& out_json) {
    JobConfig cfg = parse_config_file(config_path);
    if (cfg.levels_auto)
        throw config_error("/levels", "sweep needs an explicit levels array");
    std::vector<double> values;
    {
        std::stringstream ss(values_csv);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) values.push_back(std::stod(tok));
    }
    if (values.empty()) throw std::invalid_argument("sweep needs at least one value");

    auto family = [&](double mu) {
        JobConfig member = cfg;
        if (member.system_spec.contains(param)) member.system_spec[param] = mu;
        else member.system_spec["params"][param] = mu;
        return build_system_from_config(member);
    };
    SweepResult sweep = parameter_sweep(family, values, cfg.p, cfg.levels);

    for (const auto& e : sweep.entries)
        std::printf("mu=%s circulation=%s\n", fmt_double(e.mu).c_str(),
                    fmt_double(e.circulation).c_str());

    JobConfig dummy = cfg;
    Job stub{std::move(dummy), System{}, CostMatrix{}, PotentialProfile{}};
    std::string csv_path = output_path(stub, out_csv, "sweep_csv");
    std::string json_path = output_path(stub, out_json, "sweep_json");
    if (!csv_path.empty()) write_file(csv_path, sweep_csv(sweep));
    if (!json_path.empty()) write_file(json_path, sweep_json(sweep).dump(2) + "\n");
    return 0;
}

int cmd_verify(const std::string& config_path) {
    JobConfig cfg = parse_config_file(config_path);
    auto results = run_invariant_suite(cfg);
    bool all = true;
    for (const auto& r : results) {
        std::printf("[%s] %s%s%s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.empty() ? "" : ": ", r.detail.c_str());
        all = all && r.pass;
    }
    return all ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"crtool: coarse chain recurrence toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_csv, out_json, out_dot, out_svg;
    std::string eps_tok, levels_csv, sweep_param, sweep_values;
    double nu = -1.0;
    bool with_hyper = false;

    auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "job config (JSON)")->required();
    };

    CLI::App* p_pot = app.add_subcommand("potential", "per-node potential profile (CSV/JSON)");
    add_config(p_pot);
    p_pot->add_option("--out", out_csv, "CSV output path");
    p_pot->add_option("--json", out_json, "JSON output path");

    CLI::App* p_comp = app.add_subcommand("components", "per-level component partition (JSON)");
    add_config(p_comp);
    p_comp->add_option("--levels", levels_csv, "comma-separated level tokens (default: config)");
    p_comp->add_option("--out", out_json, "JSON output path");

    CLI::App* p_morse = app.add_subcommand("morse", "Morse (hyper-)graph at (epsilon, nu)");
    add_config(p_morse);
    p_morse->add_option("--epsilon", eps_tok, "level token, e.g. +0.1 or -0")->required();
    p_morse->add_option("--nu", nu, "error budget nu (default: config)");
    p_morse->add_flag("--hyper", with_hyper, "also record hyper-edges");
    p_morse->add_option("--dot", out_dot, "DOT output path");
    p_morse->add_option("--json", out_json, "JSON output path");

    CLI::App* p_col = app.add_subcommand("collapse", "collapse report across a level ladder");
    add_config(p_col);
    p_col->add_option("--levels", levels_csv, "comma-separated level tokens")->required();
    p_col->add_option("--nu", nu, "error budget nu (default: config)");
    p_col->add_option("--json", out_json, "JSON output path");

    CLI::App* p_diag = app.add_subcommand("diagram", "chain recurrent diagram (SVG/CSV/JSON)");
    add_config(p_diag);
    p_diag->add_option("--svg", out_svg, "SVG output path");
    p_diag->add_option("--csv", out_csv, "CSV output path");
    p_diag->add_option("--json", out_json, "JSON output path");

    CLI::App* p_sweep = app.add_subcommand("sweep", "one-parameter family sweep");
    add_config(p_sweep);
    p_sweep->add_option("--param", sweep_param, "parameter name in system spec")->required();
    p_sweep->add_option("--values", sweep_values, "comma-separated parameter values")->required();
    p_sweep->add_option("--csv", out_csv, "CSV output path");
    p_sweep->add_option("--json", out_json, "JSON output path");

    CLI::App* p_ex = app.add_subcommand("examples", "list registered systems and fixtures");
    CLI::App* p_ver = app.add_subcommand("verify", "run the invariant suite on a config");
    add_config(p_ver);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage errors -> 1
    }

    try {
        if (p_ex->parsed()) return cmd_examples();
        if (p_ver->parsed()) return cmd_verify(config_path);
        if (p_sweep->parsed())
            return cmd_sweep(config_path, sweep_param, sweep_values, out_csv, out_json);

        Job job = run_job(config_path);
        double nu_eff = nu >= 0 ? nu : job.cfg.nu;
        if (p_pot->parsed()) return cmd_potential(job, out_csv, out_json);
        if (p_comp->parsed()) return cmd_components(job, levels_csv, out_json);
        if (p_morse->parsed()) return cmd_morse(job, eps_tok, nu_eff, with_hyper, out_dot, out_json);
        if (p_col->parsed()) return cmd_collapse(job, levels_csv, nu_eff, out_json);
        if (p_diag->parsed()) return cmd_diagram(job, out_svg, out_csv, out_json);
        return 1;
    } catch (const config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const resource_limit_error& e) {
        std::fprintf(stderr, "resource limit: %s\n", e.what());
        return 3;
    } catch (const invariant_violation& e) {
        std::fprintf(stderr, "invariant violation: %s\n", e.what());
        return 4;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
