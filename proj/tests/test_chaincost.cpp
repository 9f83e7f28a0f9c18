#include <doctest.h>

#include <stdexcept>

#include <cstdio>
#include <random>

#include "crr/chaincost.hpp"
#include "crr/errors.hpp"
#include "crr/fixtures.hpp"
#include "helpers.hpp"

using namespace crr;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("p selector parsing") {
    CHECK(PNorm::parse("1").p == 1.0);
    CHECK(PNorm::parse("7").p == 7.0);
    CHECK(PNorm::parse("64").p == 64.0);
    CHECK(PNorm::parse("inf").is_inf());
    CHECK_THROWS_AS(PNorm::parse("65"), std::invalid_argument);
    CHECK_THROWS_AS(PNorm::parse("0.5"), std::invalid_argument);
    CHECK_THROWS_AS(PNorm::parse("x"), std::invalid_argument);
}

TEST_CASE("S3 cost tables") {
    System s3 = make_fixture("s3");
    CostMatrix c1 = compute_cost_matrix(s3, PNorm::one());
    double expect[3][3] = {{1, 0, 0}, {2, 1, 0}, {2, 1, 0}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(c1.at(i, j) == expect[i][j]);

    CostMatrix ci = compute_cost_matrix(s3, PNorm::inf());
    CHECK(ci.at(0, 0) == 1.0);  // direct jump beats the bottleneck-2 route via node 1
}

TEST_CASE("exact cycles travel free") {
    System c2 = make_fixture("c2");
    for (const PNorm& p : {PNorm::one(), PNorm::two(), PNorm::inf()}) {
        CostMatrix cm = compute_cost_matrix(c2, p);
        CHECK(cm.at(0, 0) == 0.0);
        CHECK(cm.at(1, 1) == 0.0);
        CHECK(cm.at(0, 1) == 0.0);
        CHECK(cm.at(1, 0) == 0.0);
    }
}

TEST_CASE("identity map: costs are distances") {
    MetricSpace sp = MetricSpace::cloud({{0.0}, {0.3}, {1.0}});
    System id = build_map_system(sp, "identity");
    CostMatrix c1 = compute_cost_matrix(id, PNorm::one());
    for (int i = 0; i < 3; ++i) {
        CHECK(c1.at(i, i) == 0.0);
        for (int j = 0; j < 3; ++j)
            if (i != j) CHECK(c1.at(i, j) == doctest::Approx(sp.distance(i, j)));
    }
}

TEST_CASE("brute force examples") {
    System s3 = make_fixture("s3");
    CHECK(brute_force_cost(s3, PNorm::one(), 2, 2, 3) == 0.0);
    CHECK(brute_force_cost(s3, PNorm::two(), 0, 0, 3) == 1.0);  // loop via 1 costs 2
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(brute_force_cost(s3, PNorm::one(), i, j, 1) == s3.one_step_cost(i, j));
}

TEST_CASE("oracle equivalence on random node-exact systems") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> size(2, 6);
    for (int rep = 0; rep < 30; ++rep) {
        System sys = crr::test::random_node_exact_system(rng, size(rng));
        const int n = sys.size();
        for (const PNorm& p : {PNorm::one(), PNorm::two(), PNorm::inf()}) {
            CostMatrix cm = compute_cost_matrix(sys, p);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    CHECK(cm.at(i, j) == brute_force_cost(sys, p, i, j, n));
        }
    }
}

TEST_CASE("cost matrix invariants on random systems") {
    std::mt19937 rng(99);
    for (int rep = 0; rep < 8; ++rep) {
        System sys = crr::test::random_node_exact_system(rng, 6);
        CostMatrix c1 = compute_cost_matrix(sys, PNorm::one());
        CostMatrix c2 = compute_cost_matrix(sys, PNorm::two());
        CostMatrix ci = compute_cost_matrix(sys, PNorm::inf());
        const int n = sys.size();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                CHECK(c1.at(i, j) <= sys.one_step_cost(i, j) + 1e-9);
                CHECK(ci.at(i, j) <= c2.at(i, j) + 1e-9);
                CHECK(c2.at(i, j) <= c1.at(i, j) + 1e-9);
                for (int k = 0; k < n; ++k) {
                    CHECK(c1.at(i, k) <= c1.at(i, j) + c1.at(j, k) + 1e-9);
                    double lhs = c2.at(i, k), a = c2.at(i, j), b = c2.at(j, k);
                    CHECK(lhs * lhs <= a * a + b * b + 1e-9);
                    CHECK(ci.at(i, k) <= std::max(ci.at(i, j), ci.at(j, k)) + 1e-9);
                }
            }
    }
}

TEST_CASE("cap pruning keeps cheap entries exact") {
    std::mt19937 rng(4);
    System sys = crr::test::random_node_exact_system(rng, 6);
    CostMatrix full = compute_cost_matrix(sys, PNorm::one());
    CostMatrix capped = compute_cost_matrix(sys, PNorm::one(), 0.25);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            if (full.at(i, j) <= 0.25) CHECK(capped.at(i, j) == full.at(i, j));
            else CHECK(capped.at(i, j) == kInf);
        }
}

TEST_CASE("results do not depend on evaluation order") {
    System fr = make_fixture("f_R");
    CostMatrix a = compute_cost_matrix(fr, PNorm::one());
    CostMatrix b = compute_cost_matrix(fr, PNorm::one());
    CHECK(a.rho == b.rho);
    std::vector<double> row = single_source_costs(fr, PNorm::one(), 17);
    for (int j = 0; j < fr.size(); ++j) CHECK(row[j] == a.at(17, j));
}

TEST_CASE("dense cap raises a resource error") {
    System fr = make_fixture("f_R");  // 400 nodes
    CHECK_THROWS_AS(compute_cost_matrix(fr, PNorm::one(), {}, 100), resource_limit_error);
}

TEST_CASE("brute force enforces its size limits") {
    System fr = make_fixture("f_R");
    CHECK_THROWS_AS(brute_force_cost(fr, PNorm::one(), 0, 1, 3), resource_limit_error);
    System s3 = make_fixture("s3");
    CHECK_THROWS_AS(brute_force_cost(s3, PNorm::one(), 0, 1, 9), resource_limit_error);
    CHECK_THROWS_AS(brute_force_cost(s3, PNorm::one(), 0, 1, 0), resource_limit_error);
}

TEST_CASE("dump round trip") {
    System s3 = make_fixture("s3");
    CostMatrix cm = compute_cost_matrix(s3, PNorm::two(), 10.0);
    std::string bin = "costs_test.bin", js = "costs_test.json";
    save_cost_matrix(cm, bin, js);
    CostMatrix back = load_cost_matrix(bin, js);
    CHECK(back.n == cm.n);
    CHECK(back.p == cm.p);
    CHECK(back.cap.value() == 10.0);
    CHECK(back.rho == cm.rho);
    std::remove(bin.c_str());
    std::remove(js.c_str());
}

TEST_CASE("layered costs respect layer gating") {
    System dec = build_nonautonomous_system(MetricSpace::interval(0, 1, 3), {0.0, 1.0}, "identity",
                                            {}, 1);
    CostMatrix cm = compute_cost_matrix(dec, PNorm::one());
    // top layer is absorbing: nothing reachable from it
    for (int j = 0; j < cm.n; ++j) CHECK(cm.at(3, j) == kInf);
    // layer 0 node reaches its own top-layer copy for free
    CHECK(cm.at(0, 3) == 0.0);
    // no route back down
    CHECK(cm.at(4, 1) == kInf);
}
