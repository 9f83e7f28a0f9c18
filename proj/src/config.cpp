#include "crr/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "crr/errors.hpp"
#include "crr/recurrence.hpp"

namespace crr {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw config_error(where + "/" + it.key(), "unknown key");
}

double num_at(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw config_error(where + "/" + key, "missing");
    if (!obj[key].is_number()) throw config_error(where + "/" + key, "expected a number");
    return obj[key].get<double>();
}

int int_at(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw config_error(where + "/" + key, "missing");
    if (!obj[key].is_number_integer()) throw config_error(where + "/" + key, "expected an integer");
    return obj[key].get<int>();
}

Params params_at(const json& obj, const std::string& where) {
    Params p;
    if (!obj.contains("params")) return p;
    if (!obj["params"].is_object()) throw config_error(where + "/params", "expected an object");
    for (auto it = obj["params"].begin(); it != obj["params"].end(); ++it) {
        if (!it.value().is_number())
            throw config_error(where + "/params/" + it.key(), "expected a number");
        p[it.key()] = it.value().get<double>();
    }
    return p;
}

}  // namespace

MetricSpace build_space(const json& spec) {
    const std::string where = "/space";
    if (!spec.is_object()) throw config_error(where, "expected an object");
    if (!spec.contains("kind")) throw config_error(where + "/kind", "missing");
    const std::string kind = spec["kind"].get<std::string>();
    try {
        if (kind == "interval") {
            check_keys(spec, {"kind", "bounds", "n"}, where);
            if (!spec.contains("bounds") || !spec["bounds"].is_array() || spec["bounds"].size() != 2)
                throw config_error(where + "/bounds", "expected [lo, hi]");
            return MetricSpace::interval(spec["bounds"][0].get<double>(),
                                         spec["bounds"][1].get<double>(), int_at(spec, "n", where));
        }
        if (kind == "circle") {
            check_keys(spec, {"kind", "circumference", "n"}, where);
            return MetricSpace::circle(num_at(spec, "circumference", where),
                                       int_at(spec, "n", where));
        }
        if (kind == "torus") {
            check_keys(spec, {"kind", "circumferences", "n"}, where);
            if (!spec.contains("circumferences") || !spec["circumferences"].is_array())
                throw config_error(where + "/circumferences", "expected an array");
            return MetricSpace::torus(spec["circumferences"].get<std::vector<double>>(),
                                      int_at(spec, "n", where));
        }
        if (kind == "cloud") {
            check_keys(spec, {"kind", "points"}, where);
            if (!spec.contains("points")) throw config_error(where + "/points", "missing");
            return MetricSpace::cloud(spec["points"].get<std::vector<std::vector<double>>>());
        }
        if (kind == "matrix") {
            check_keys(spec, {"kind", "matrix"}, where);
            if (!spec.contains("matrix")) throw config_error(where + "/matrix", "missing");
            return MetricSpace::distance_matrix(
                spec["matrix"].get<std::vector<std::vector<double>>>());
        }
    } catch (const resource_limit_error&) {
        throw;
    } catch (const config_error&) {
        throw;
    } catch (const std::exception& e) {
        throw config_error(where, e.what());
    }
    throw config_error(where + "/kind", "unknown space kind '" + kind + "'");
}

JobConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw config_error("", "config must be a JSON object");
    check_keys(doc,
               {"space", "system", "p", "levels", "nu", "theta_rec", "eta_def", "cap", "eta",
                "resource_cap", "outputs"},
               "");
    JobConfig cfg;
    if (!doc.contains("system")) throw config_error("/system", "missing");
    cfg.system_spec = doc["system"];
    if (!cfg.system_spec.is_object() || !cfg.system_spec.contains("kind"))
        throw config_error("/system/kind", "missing");
    const std::string kind = cfg.system_spec["kind"].get<std::string>();

    const std::set<std::string> self_contained = {"counterexample_A", "example_non_increasing"};
    if (doc.contains("space")) cfg.space_spec = doc["space"];
    else if (!self_contained.count(kind)) throw config_error("/space", "missing");

    // System schema, validated now so errors carry pointer paths.
    const std::string sw = "/system";
    if (kind == "map") {
        check_keys(cfg.system_spec, {"kind", "name", "params", "field", "N", "m"}, sw);
        if (!cfg.system_spec.contains("name")) throw config_error(sw + "/name", "missing");
    } else if (kind == "flow") {
        check_keys(cfg.system_spec, {"kind", "name", "params", "T", "m", "integrator_step"}, sw);
        if (!cfg.system_spec.contains("name")) throw config_error(sw + "/name", "missing");
        if (!cfg.system_spec.contains("T")) throw config_error(sw + "/T", "missing");
    } else if (kind == "permutation") {
        check_keys(cfg.system_spec, {"kind", "forward", "inverse"}, sw);
        if (!cfg.system_spec.contains("forward")) throw config_error(sw + "/forward", "missing");
        if (!cfg.system_spec.contains("inverse")) throw config_error(sw + "/inverse", "missing");
    } else if (kind == "nonautonomous") {
        check_keys(cfg.system_spec,
                   {"kind", "name", "params", "map", "field", "time_grid", "max_layer_skip"}, sw);
        if (!cfg.system_spec.contains("name")) throw config_error(sw + "/name", "missing");
        if (!cfg.system_spec.contains("time_grid"))
            throw config_error(sw + "/time_grid", "missing");
    } else if (kind == "counterexample_A") {
        check_keys(cfg.system_spec, {"kind", "epsilon", "N"}, sw);
    } else if (kind == "example_non_increasing") {
        check_keys(cfg.system_spec, {"kind", "N"}, sw);
    } else {
        throw config_error(sw + "/kind", "unknown system kind '" + kind + "'");
    }

    if (doc.contains("p")) {
        if (!doc["p"].is_string())
            throw config_error("/p", "expected a string (\"1\", \"2\", ..., \"64\", \"inf\")");
        try {
            cfg.p = PNorm::parse(doc["p"].get<std::string>());
        } catch (const std::exception& e) {
            throw config_error("/p", e.what());
        }
    }

    if (doc.contains("levels")) {
        if (doc["levels"].is_string()) {
            if (doc["levels"].get<std::string>() != "auto")
                throw config_error("/levels", "expected \"auto\" or an array of level tokens");
        } else if (doc["levels"].is_array()) {
            cfg.levels_auto = false;
            int idx = 0;
            for (const auto& tok : doc["levels"]) {
                if (!tok.is_string())
                    throw config_error("/levels/" + std::to_string(idx), "expected a string token");
                try {
                    cfg.levels.push_back(Level::parse(tok.get<std::string>()));
                } catch (const std::exception& e) {
                    throw config_error("/levels/" + std::to_string(idx), e.what());
                }
                ++idx;
            }
            if (cfg.levels.empty()) throw config_error("/levels", "empty level grid");
        } else {
            throw config_error("/levels", "expected \"auto\" or an array of level tokens");
        }
    }

    if (doc.contains("nu")) {
        cfg.nu = num_at(doc, "nu", "");
        if (!(cfg.nu >= 0)) throw config_error("/nu", "nu must be >= 0");
    }
    if (doc.contains("theta_rec")) cfg.theta_rec = num_at(doc, "theta_rec", "");
    if (doc.contains("eta_def")) cfg.eta_def = num_at(doc, "eta_def", "");
    if (doc.contains("cap")) cfg.cap = num_at(doc, "cap", "");
    if (doc.contains("eta")) {
        cfg.eta = num_at(doc, "eta", "");
        if (!(cfg.eta >= 0)) throw config_error("/eta", "eta must be >= 0");
    }
    if (doc.contains("resource_cap")) cfg.resource_cap = int_at(doc, "resource_cap", "");

    if (doc.contains("outputs")) {
        if (!doc["outputs"].is_object()) throw config_error("/outputs", "expected an object");
        std::set<std::string> paths;
        for (auto it = doc["outputs"].begin(); it != doc["outputs"].end(); ++it) {
            if (!it.value().is_string())
                throw config_error("/outputs/" + it.key(), "expected a path string");
            std::string p = it.value().get<std::string>();
            if (!paths.insert(p).second)
                throw config_error("/outputs/" + it.key(), "conflicting outputs: duplicate path");
            cfg.outputs[it.key()] = p;
        }
    }
    return cfg;
}

JobConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw config_error("", std::string("JSON syntax error: ") + e.what());
    }
    return parse_config(doc);
}

System build_system_from_config(const JobConfig& cfg) {
    const json& spec = cfg.system_spec;
    const std::string kind = spec["kind"].get<std::string>();
    const std::string sw = "/system";
    try {
        if (kind == "counterexample_A")
            return build_counterexample_A(spec.contains("epsilon") ? spec["epsilon"].get<double>()
                                                                   : 0.5,
                                          spec.contains("N") ? spec["N"].get<int>() : 10);
        if (kind == "example_non_increasing")
            return build_example_non_increasing(spec.contains("N") ? spec["N"].get<int>() : 20);

        MetricSpace space = build_space(cfg.space_spec);
        if (kind == "map") {
            const std::string name = spec["name"].get<std::string>();
            Params params = params_at(spec, sw);
            int N = spec.contains("N") ? spec["N"].get<int>() : 1;
            int m = spec.contains("m") ? spec["m"].get<int>() : N;
            if (name == "time_one_of") {
                if (!spec.contains("field")) throw config_error(sw + "/field", "missing");
                double time = params.count("time") ? params["time"] : 1.0;
                double step = params.count("step") ? params["step"] : time / 100;
                Params field_params = params;
                field_params.erase("time");
                field_params.erase("step");
                FieldFn f = make_named_field(spec["field"].get<std::string>(), field_params);
                return build_map_system(space, time_map(f, time, step), N, m);
            }
            return build_map_system(space, name, params, N, m);
        }
        if (kind == "flow") {
            double T = spec["T"].get<double>();
            int m = spec.contains("m") ? spec["m"].get<int>() : 1;
            double step = spec.contains("integrator_step") ? spec["integrator_step"].get<double>()
                                                           : T / 10;
            return build_flow_system(space, spec["name"].get<std::string>(), params_at(spec, sw),
                                     T, m, step);
        }
        if (kind == "permutation") {
            return build_permutation_system(space, spec["forward"].get<std::vector<int>>(),
                                            spec["inverse"].get<std::vector<int>>());
        }
        if (kind == "nonautonomous") {
            const std::string name = spec["name"].get<std::string>();
            auto grid = spec["time_grid"].get<std::vector<double>>();
            int skip = spec.contains("max_layer_skip") ? spec["max_layer_skip"].get<int>() : 1;
            Params params = params_at(spec, sw);
            if (name == "autonomous_map") {
                if (!spec.contains("map")) throw config_error(sw + "/map", "missing");
                MapFn f = make_named_map(spec["map"].get<std::string>(), params);
                NonautonomousStep step = [f](double, double t, std::span<const double> x) {
                    long long k = std::llround(t);
                    if (k < 1 || std::fabs(t - k) > 1e-9)
                        throw std::invalid_argument(
                            "autonomous_map needs integer layer time gaps");
                    std::vector<double> y(x.begin(), x.end());
                    for (long long i = 0; i < k; ++i) y = f(y);
                    return y;
                };
                return build_nonautonomous_system(space, grid, step, skip);
            }
            if (name == "autonomous_flow") {
                if (!spec.contains("field")) throw config_error(sw + "/field", "missing");
                double istep = params.count("step") ? params["step"] : 0.01;
                Params field_params = params;
                field_params.erase("step");
                FieldFn f = make_named_field(spec["field"].get<std::string>(), field_params);
                NonautonomousStep step = [f, istep](double, double t, std::span<const double> x) {
                    return rk4_advance(f, x, t, istep);
                };
                return build_nonautonomous_system(space, grid, step, skip);
            }
            return build_nonautonomous_system(space, grid, name, params, skip);
        }
    } catch (const config_error&) {
        throw;
    } catch (const resource_limit_error&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw config_error(sw, e.what());
    }
    throw config_error(sw + "/kind", "unknown system kind '" + kind + "'");
}

std::vector<Level> resolve_levels(const JobConfig& cfg, const CostMatrix& costs,
                                  int auto_level_cap) {
    if (!cfg.levels_auto) return cfg.levels;
    std::vector<double> crit = critical_values(costs);
    if (static_cast<int>(crit.size()) > auto_level_cap)
        throw resource_limit_error("auto level grid has " + std::to_string(crit.size()) +
                                   " critical values; pass an explicit levels array");
    std::vector<Level> levels;
    levels.reserve(crit.size() + 1);
    levels.push_back(Level::neg(0));
    for (double c : crit) levels.push_back(Level::pos(c));
    return levels;
}

}  // namespace crr
