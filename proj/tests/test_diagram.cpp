#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "crr/diagram.hpp"
#include "crr/fixtures.hpp"

using namespace crr;

namespace {

struct Bundle {
    System sys;
    CostMatrix costs;
    PotentialProfile prof;
};

Bundle bundle(System sys, PNorm p) {
    CostMatrix cm = compute_cost_matrix(sys, p);
    PotentialProfile prof = profile_for(sys, cm);
    return Bundle{std::move(sys), std::move(cm), std::move(prof)};
}

int node_at(const System& sys, double x) {
    for (int i = 0; i < sys.size(); ++i)
        if (sys.space().point(i)[0] == x) return i;
    return -1;
}

}  // namespace

TEST_CASE("g_half diagram membership") {
    Bundle b = bundle(build_map_system(MetricSpace::interval(-2, 2, 41), "g_half"), PNorm::one());
    Diagram d = build_diagram(b.prof, {Level::neg(1), Level::pos(0), Level::pos(0.5),
                                       Level::pos(1)});
    int n1 = node_at(b.sys, 1.0);
    int n0 = node_at(b.sys, 0.0);
    REQUIRE(n1 >= 0);
    REQUIRE(n0 >= 0);
    // node 1.0 has tau POS(0.5): member from POS(0.5) upward
    CHECK_FALSE(d.member(0, n1));
    CHECK_FALSE(d.member(1, n1));
    CHECK(d.member(2, n1));
    CHECK(d.member(3, n1));
    // node 0 is NEG(inf): member at every level
    for (int l = 0; l < 4; ++l) CHECK(d.member(l, n0));
}

TEST_CASE("f_rep membership switches at its potential value") {
    Bundle b = bundle(make_fixture("f_rep"), PNorm::one());
    double h = b.sys.space().grid_step();
    int n2 = node_at(b.sys, 2.0);
    REQUIRE(n2 >= 0);
    Diagram d = build_diagram(b.prof, {Level::pos(2.0 - 2 * h), Level::pos(2.0 + 2 * h)});
    CHECK_FALSE(d.member(0, n2));
    CHECK(d.member(1, n2));
}

TEST_CASE("single fixed point fills its column") {
    Bundle b = bundle(build_map_system(MetricSpace::cloud({{0.0}}), "identity"), PNorm::one());
    Diagram d = build_diagram_auto(b.prof);
    for (std::size_t l = 0; l < d.levels.size(); ++l) CHECK(d.member(static_cast<int>(l), 0));
}

TEST_CASE("diagram is monotone along levels") {
    for (const char* name : {"s3", "f_R", "g_half", "f_rep", "f_att"}) {
        Bundle b = bundle(make_fixture(name), PNorm::one());
        Diagram d = build_diagram_auto(b.prof);
        for (int i = 0; i < d.n; ++i) {
            bool seen = false;
            for (std::size_t l = 0; l < d.levels.size(); ++l) {
                bool m = d.member(static_cast<int>(l), i);
                CHECK((!seen || m));
                seen = seen || m;
            }
        }
    }
}

TEST_CASE("SVG rendering") {
    // f_att keeps its x <= 0 half on the negative branch at -inf, so the
    // bottom hatch band must show up.
    Bundle b = bundle(make_fixture("f_att"), PNorm::inf());
    Diagram d = build_diagram(b.prof, {Level::neg_inf(), Level::neg(1), Level::pos(0),
                                       Level::pos(0.5), Level::pos(1), Level::pos(2)});
    std::string svg = render_svg(d, b.sys.space());
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<rect") != std::string::npos);
    CHECK(svg.find("url(#hatch)") != std::string::npos);  // NEG(inf) band
    CHECK(svg == render_svg(d, b.sys.space()));            // identical bytes

    // unsupported dimension
    Bundle t = bundle(make_fixture("torus_psi2"), PNorm::one());
    Diagram dt = build_diagram(t.prof, {Level::pos(0)});
    CHECK_THROWS_AS(render_svg(dt, t.sys.space()), std::invalid_argument);

    // empty membership still yields valid SVG
    Bundle tr = bundle(make_fixture("translation"), PNorm::one());
    Diagram de = build_diagram(tr.prof, {Level::pos(0.1)});
    std::string empty_svg = render_svg(de, tr.sys.space());
    CHECK(empty_svg.rfind("<?xml", 0) == 0);
    CHECK(empty_svg.find("</svg>") != std::string::npos);
}

TEST_CASE("table exports") {
    Bundle b = bundle(make_fixture("s3"), PNorm::one());
    Diagram d = build_diagram(b.prof, {Level::neg(0), Level::pos(0), Level::pos(1)});
    std::string csv = diagram_csv(d, b.sys);
    // header + |levels| * n rows
    std::size_t rows = std::count(csv.begin(), csv.end(), '\n');
    CHECK(rows == 1 + 3 * 3);
    CHECK(csv == diagram_csv(d, b.sys));

    nlohmann::json pj = profile_json(b.prof, b.sys);
    CHECK(pj["tau_pos"] == nlohmann::json::array({1.0, 1.0, 0.0}));
    CHECK(pj["tau_branch"][2] == "NEG");
    CHECK(pj["defect"][2] == "inf");
    std::string pcsv = profile_csv(b.prof, b.sys);
    CHECK(pcsv.find("node_index") == 0);
    CHECK(pcsv.find("inf") != std::string::npos);
}

TEST_CASE("nonautonomous potential table") {
    System sys = build_nonautonomous_system(MetricSpace::interval(0, 1, 3), {0.0, 1.0, 2.0},
                                            "identity", {}, 1);
    CostMatrix cm = compute_cost_matrix(sys, PNorm::one());
    std::string csv = nonautonomous_potential_csv(cm, sys);
    CHECK(csv.find("layer,node") == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 9);
    CHECK(csv.find("inf") != std::string::npos);  // absorbing top layer
    CHECK(csv == nonautonomous_potential_csv(cm, sys));
}

TEST_CASE("translation family sweep") {
    auto family = [](double R) {
        return build_map_system(MetricSpace::interval(0, 10, 51), "translation", {{"R", R}});
    };
    SweepResult sw = parameter_sweep(family, {-1.0, -0.5, 0.0}, PNorm::inf(),
                                     {Level::pos(0), Level::pos(0.5), Level::pos(1)});
    REQUIRE(sw.entries.size() == 3);
    CHECK(sw.entries[0].circulation == doctest::Approx(1.0));
    CHECK(sw.entries[1].circulation == doctest::Approx(0.5));
    CHECK(sw.entries[2].circulation == doctest::Approx(0.0));
    // membership from POS(-R) upward: at R=-1 nodes enter only at POS(1)
    CHECK_FALSE(sw.entries[0].diagram.member(0, 10));
    CHECK_FALSE(sw.entries[0].diagram.member(1, 10));
    CHECK(sw.entries[0].diagram.member(2, 10));
    // the POS(0) slice picks out exactly the nodes on exact cycles: all of
    // them at R=0 (identity), none at R=-1
    for (int i = 0; i < sw.entries[2].diagram.n; ++i) {
        CHECK(sw.entries[2].diagram.member(0, i));
        CHECK_FALSE(sw.entries[0].diagram.member(0, i));
    }
    std::string csv = sweep_csv(sw);
    CHECK(csv.find("mu,level_branch") == 0);
}

TEST_CASE("singleton sweep reduces to one profile") {
    auto family = [](double) {
        return build_map_system(MetricSpace::interval(-2, 2, 21), "g_half");
    };
    SweepResult sw = parameter_sweep(family, {0.0}, PNorm::one(), {Level::pos(0.5)});
    REQUIRE(sw.entries.size() == 1);
    CHECK(sw.entries[0].profile.size() == 21);
}

TEST_CASE("stagnation sweep: circulation cost grows with mu") {
    auto family = [](double mu) {
        return build_flow_system(MetricSpace::circle(2 * 3.14159265358979323846, 120),
                                 "circle_stagnation", {{"mu", mu}, {"k", 1.0}}, 0.1, 2, 0.01);
    };
    SweepResult sw = parameter_sweep(family, {1.5, 2.0}, PNorm::one(), {Level::pos(0)});
    REQUIRE(sw.entries.size() == 2);
    CHECK(sw.entries[0].circulation < sw.entries[1].circulation);
}

TEST_CASE("sweep failures name the offending member") {
    auto family = [](double mu) {
        return build_flow_system(MetricSpace::interval(0, 1, 5), "line_repel", {}, mu, 1, 0.1);
    };
    CHECK_THROWS_WITH_AS(parameter_sweep(family, {-1.0}, PNorm::one(), {Level::pos(0)}),
                         doctest::Contains("mu=-1"), std::runtime_error);
}
