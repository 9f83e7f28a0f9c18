#pragma once

#include <random>
#include <vector>

#include "crr/system.hpp"

namespace crr::test {

// Random 1-D point cloud in [0,1] with a random node-exact map.
inline System random_node_exact_system(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < n; ++i) pts.push_back({coord(rng)});
    MetricSpace sp = MetricSpace::cloud(pts);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = pick(rng);
    MapFn f = [pts, img, n](std::span<const double> x) {
        for (int i = 0; i < n; ++i)
            if (x[0] == pts[i][0]) return pts[img[i]];
        return std::vector<double>{x[0]};
    };
    return build_map_system(sp, f);
}

inline System random_permutation_system(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < n; ++i) pts.push_back({coord(rng)});
    MetricSpace sp = MetricSpace::cloud(pts);
    std::vector<int> fwd(n), inv(n);
    for (int i = 0; i < n; ++i) fwd[i] = i;
    std::shuffle(fwd.begin(), fwd.end(), rng);
    for (int i = 0; i < n; ++i) inv[fwd[i]] = i;
    return build_permutation_system(sp, fwd, inv);
}

}  // namespace crr::test
