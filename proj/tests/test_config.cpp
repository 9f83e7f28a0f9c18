#include <doctest.h>

#include <stdexcept>

#include "crr/config.hpp"
#include "crr/errors.hpp"
#include "crr/recurrence.hpp"

using namespace crr;
using nlohmann::json;

TEST_CASE("minimal config applies defaults") {
    json doc = {{"system", {{"kind", "map"}, {"name", "f_R"}}},
                {"space", {{"kind", "circle"}, {"circumference", 2}, {"n", 64}}},
                {"p", "1"}};
    JobConfig cfg = parse_config(doc);
    CHECK(cfg.p.p == 1.0);
    CHECK(cfg.levels_auto);
    CHECK(cfg.nu == 0.0);
    CHECK(cfg.resource_cap == 4096);
    System sys = build_system_from_config(cfg);
    CHECK(sys.size() == 64);
}

TEST_CASE("p selector accepts 7, rejects junk") {
    json doc = {{"system", {{"kind", "map"}, {"name", "g_half"}}},
                {"space", {{"kind", "interval"}, {"bounds", {-1, 1}}, {"n", 5}}},
                {"p", "7"}};
    CHECK(parse_config(doc).p.p == 7.0);
    doc["p"] = "65";
    CHECK_THROWS_AS(parse_config(doc), config_error);
    doc["p"] = 7;  // must be a string token
    CHECK_THROWS_AS(parse_config(doc), config_error);
}

TEST_CASE("level tokens -0 and +0 are distinct") {
    json doc = {{"system", {{"kind", "map"}, {"name", "g_half"}}},
                {"space", {{"kind", "interval"}, {"bounds", {-1, 1}}, {"n", 5}}},
                {"levels", {"-0", "+0"}}};
    JobConfig cfg = parse_config(doc);
    REQUIRE(cfg.levels.size() == 2);
    CHECK(cfg.levels[0].is_neg());
    CHECK(cfg.levels[1].is_pos());
    CHECK(cfg.levels[0] < cfg.levels[1]);
}

TEST_CASE("unknown keys carry a pointer path") {
    json doc = {{"system", {{"kind", "map"}, {"name", "g_half"}, {"bogus", 1}}},
                {"space", {{"kind", "interval"}, {"bounds", {-1, 1}}, {"n", 5}}}};
    try {
        parse_config(doc);
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(e.where == "/system/bogus");
    }
    json doc2 = {{"system", {{"kind", "map"}, {"name", "g_half"}}},
                 {"space", {{"kind", "interval"}, {"bounds", {-1, 1}}, {"n", 5}}},
                 {"shenanigans", true}};
    CHECK_THROWS_AS(parse_config(doc2), config_error);
}

TEST_CASE("duplicate output paths are conflicts") {
    json doc = {{"system", {{"kind", "map"}, {"name", "g_half"}}},
                {"space", {{"kind", "interval"}, {"bounds", {-1, 1}}, {"n", 5}}},
                {"outputs", {{"profile_csv", "a.csv"}, {"diagram_csv", "a.csv"}}}};
    CHECK_THROWS_AS(parse_config(doc), config_error);
}

TEST_CASE("every system kind builds from config") {
    {
        json doc = {{"system",
                     {{"kind", "flow"}, {"name", "line_attract"}, {"T", 0.5}, {"m", 2}}},
                    {"space", {{"kind", "interval"}, {"bounds", {-1, 1}}, {"n", 9}}}};
        System sys = build_system_from_config(parse_config(doc));
        CHECK(sys.kind() == SystemKind::Flow);
        CHECK(sys.image_count(0) == 2);
        CHECK(sys.integrator_step() == doctest::Approx(0.05));  // default T/10
    }
    {
        json doc = {{"system", {{"kind", "permutation"}, {"forward", {1, 0}}, {"inverse", {1, 0}}}},
                    {"space", {{"kind", "interval"}, {"bounds", {0, 1}}, {"n", 2}}}};
        System sys = build_system_from_config(parse_config(doc));
        CHECK(sys.kind() == SystemKind::Permutation);
    }
    {
        json doc = {{"system",
                     {{"kind", "nonautonomous"},
                      {"name", "autonomous_map"},
                      {"map", "g_half"},
                      {"time_grid", {0, 1, 2}},
                      {"max_layer_skip", 1}}},
                    {"space", {{"kind", "interval"}, {"bounds", {0, 2}}, {"n", 5}}}};
        System sys = build_system_from_config(parse_config(doc));
        CHECK(sys.kind() == SystemKind::Nonautonomous);
        CHECK(sys.image(2, 0)[0] == doctest::Approx(0.5));  // (0, 1.0) -> (1, 0.5)
    }
    {
        json doc = {{"system", {{"kind", "counterexample_A"}, {"epsilon", 0.5}, {"N", 3}}}};
        System sys = build_system_from_config(parse_config(doc));
        CHECK(sys.size() == 3 * 7);
    }
    {
        json doc = {{"system", {{"kind", "example_non_increasing"}, {"N", 4}}}};
        System sys = build_system_from_config(parse_config(doc));
        CHECK(sys.size() == 2 + 2 * 9);
    }
    {
        json doc = {{"system",
                     {{"kind", "map"},
                      {"name", "time_one_of"},
                      {"field", "circle_psi_delta"},
                      {"params", {{"delta", 0.25}, {"step", 0.02}}}}},
                    {"space", {{"kind", "circle"}, {"circumference", 1}, {"n", 16}}}};
        System sys = build_system_from_config(parse_config(doc));
        // points in the stagnation zone stay put
        CHECK(sys.image(0, 0)[0] == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("space schema errors") {
    CHECK_THROWS_AS(build_space(json{{"kind", "circle"}, {"circumference", -1}, {"n", 4}}),
                    config_error);
    CHECK_THROWS_AS(build_space(json{{"kind", "nope"}}), config_error);
    CHECK_THROWS_AS(build_space(json{{"kind", "interval"}, {"n", 4}}), config_error);
    CHECK_THROWS_AS(build_space(json{{"kind", "interval"}, {"bounds", {0, 1}}, {"n", 4},
                                     {"extra", 1}}),
                    config_error);
    MetricSpace sp = build_space(json{{"kind", "matrix"}, {"matrix", {{0, 1}, {1, 0}}}});
    CHECK(sp.distance(0, 1) == 1.0);
}

TEST_CASE("auto level resolution uses critical values") {
    json doc = {{"system", {{"kind", "map"}, {"name", "g_half"}}},
                {"space", {{"kind", "interval"}, {"bounds", {-2, 2}}, {"n", 9}}}};
    JobConfig cfg = parse_config(doc);
    System sys = build_system_from_config(cfg);
    CostMatrix cm = compute_cost_matrix(sys, cfg.p);
    std::vector<Level> levels = resolve_levels(cfg, cm);
    CHECK(levels.size() >= 2);
    CHECK(levels.front() == Level::neg(0));
    CHECK_THROWS_AS(resolve_levels(cfg, cm, 2), resource_limit_error);
}
