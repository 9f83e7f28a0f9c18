#include "crr/fixtures.hpp"

#include <cmath>
#include <stdexcept>

namespace crr {

namespace {

double pi() { return 3.14159265358979323846; }

System make_s3() {
    // Line nodes {0,1,2}, map 0->1, 1->2, 2->2.
    MetricSpace sp = MetricSpace::interval(0, 2, 3);
    MapFn f = [](std::span<const double> x) {
        double v = x[0] < 0.5 ? 1.0 : 2.0;
        return std::vector<double>{v};
    };
    return build_map_system(sp, f);
}

System make_c2() {
    MetricSpace sp = MetricSpace::interval(0, 1, 2);
    return build_permutation_system(sp, {1, 0}, {1, 0});
}

System make_perm_two_cycles() {
    MetricSpace sp = MetricSpace::interval(0, 7, 8);
    std::vector<int> fwd = {1, 2, 0, 4, 3, 5, 7, 6};
    std::vector<int> inv(8);
    for (int i = 0; i < 8; ++i) inv[fwd[i]] = i;
    return build_permutation_system(sp, fwd, inv);
}

}  // namespace

System build_c_ex_001(double delta, int n, double hot_jump, double amplitude) {
    if (!(delta > 0 && delta < 0.5)) throw std::invalid_argument("c_ex_001 needs delta in (0,0.5)");
    if (n < 20) throw std::invalid_argument("c_ex_001 needs n >= 20");
    MetricSpace sp = MetricSpace::circle(1.0, n);
    const double h = 1.0 / n;
    const int i_delta = static_cast<int>(std::llround(delta / h));
    MapFn f = [=](std::span<const double> x) {
        double u = std::fmod(x[0], 1.0);
        if (u < 0) u += 1.0;
        int i = static_cast<int>(std::llround(u / h)) % n;
        if (i <= i_delta) return std::vector<double>{x[0]};  // stagnation zone, fixed
        int k;
        if (i == i_delta + 1) {
            k = std::max<int>(1, static_cast<int>(std::llround(hot_jump / h)));
        } else {
            double v = (u - delta - h) / (1.0 - delta - h);
            double g = amplitude * std::sin(pi() * v);
            k = std::max<int>(1, static_cast<int>(std::llround(g / h)));
        }
        return std::vector<double>{x[0] + k * h};
    };
    return build_map_system(sp, f);
}

const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> names = {
        "s3",          "c2",          "f_R",         "g_half",     "f_rep",
        "f_att",       "identity3",   "translation", "cos_time_one",
        "perm_two_cycles", "counterexample_A", "non_increasing", "stagnation",
        "c_ex_001",    "torus_psi2",  "nonauto_decay",
    };
    return names;
}

System make_fixture(const std::string& name) {
    if (name == "s3") return make_s3();
    if (name == "c2") return make_c2();
    if (name == "f_R") return build_map_system(MetricSpace::circle(2.0, 400), "f_R");
    if (name == "g_half") return build_map_system(MetricSpace::interval(-2, 2, 161), "g_half");
    if (name == "f_rep") return build_map_system(MetricSpace::interval(-3, 3, 241), "f_rep");
    if (name == "f_att") return build_map_system(MetricSpace::interval(-3, 3, 241), "f_att");
    if (name == "identity3")
        return build_map_system(MetricSpace::cloud({{0.0}, {1.0}, {3.0}}), "identity");
    if (name == "translation")
        return build_map_system(MetricSpace::interval(0, 10, 101), "translation", {{"R", -0.5}});
    if (name == "cos_time_one")
        return build_map_system(MetricSpace::interval(-7, 7, 141), "cos_gradient_time_one");
    if (name == "perm_two_cycles") return make_perm_two_cycles();
    if (name == "counterexample_A") return build_counterexample_A(0.5, 8);
    if (name == "non_increasing") return build_example_non_increasing(8);
    if (name == "stagnation")
        return build_flow_system(MetricSpace::circle(2 * pi(), 160), "circle_stagnation",
                                 {{"mu", 2.0}, {"k", 1.0}}, 0.1, 2, 0.01);
    if (name == "c_ex_001") return build_c_ex_001(0.1, 400);
    if (name == "torus_psi2")
        return build_flow_system(MetricSpace::torus({1.0, 1.0}, 16), "torus_psi2", {}, 0.5, 1,
                                 0.05);
    if (name == "nonauto_decay")
        return build_nonautonomous_system(MetricSpace::interval(0, 1, 11), {0.0, 1.0, 2.0},
                                          "decay", {}, 1);
    throw std::invalid_argument("unknown fixture '" + name + "'");
}

}  // namespace crr
