#pragma once

#include <random>
#include <vector>

#include "oscsim/rng.hpp"
#include "oscsim/spring_network.hpp"

namespace oscsim::testutil {

struct RandomNetworkOptions {
    int max_n = 64;
    int max_d = 8;
    double mass_lo = 1.0;
    double mass_hi = 2.0;
    double kappa_lo = 0.1;
    double kappa_hi = 1.0;
    double wall_probability = 0.3;
};

// Random network with row sparsity at most max_d (diagonal included). Some
// draws have wall springs, some have none, so zero modes occur.
inline SpringNetwork random_network(std::uint64_t seed,
                                    const RandomNetworkOptions& opt = {}) {
    std::mt19937_64 gen(seed);
    const int n = 2 + static_cast<int>(uniform_index(gen, static_cast<std::uint64_t>(
                                                              opt.max_n - 1)));
    std::vector<double> masses(static_cast<std::size_t>(n));
    for (double& m : masses) m = uniform_range(gen, opt.mass_lo, opt.mass_hi);

    std::vector<int> row_count(static_cast<std::size_t>(n), 0);
    std::vector<Spring> springs;
    const bool use_walls = uniform01(gen) < opt.wall_probability;
    if (use_walls) {
        const int walls = 1 + static_cast<int>(uniform_index(gen, 2));
        for (int w = 0; w < walls; ++w) {
            const int j = static_cast<int>(uniform_index(gen, static_cast<std::uint64_t>(n)));
            bool present = false;
            for (const Spring& s : springs)
                if (s.j == j && s.k == j) present = true;
            if (present) continue;
            springs.push_back({j, j, uniform_range(gen, opt.kappa_lo, opt.kappa_hi)});
            row_count[static_cast<std::size_t>(j)]++;
        }
    }
    const int attempts = 3 * n;
    for (int a = 0; a < attempts; ++a) {
        const int j = static_cast<int>(uniform_index(gen, static_cast<std::uint64_t>(n)));
        const int k = static_cast<int>(uniform_index(gen, static_cast<std::uint64_t>(n)));
        if (j == k) continue;
        const int lo = std::min(j, k), hi = std::max(j, k);
        if (row_count[static_cast<std::size_t>(lo)] >= opt.max_d - 1 ||
            row_count[static_cast<std::size_t>(hi)] >= opt.max_d - 1)
            continue;
        bool present = false;
        for (const Spring& s : springs)
            if (s.j == lo && s.k == hi) present = true;
        if (present) continue;
        springs.push_back({lo, hi, uniform_range(gen, opt.kappa_lo, opt.kappa_hi)});
        row_count[static_cast<std::size_t>(lo)]++;
        row_count[static_cast<std::size_t>(hi)]++;
    }
    if (springs.empty()) springs.push_back({0, std::min(1, n - 1), 1.0});
    return SpringNetwork(n, std::move(masses), std::move(springs), opt.max_d);
}

inline ClassicalState random_state(std::uint64_t seed, int n) {
    std::mt19937_64 gen(seed);
    ClassicalState s;
    s.x.resize(n);
    s.v.resize(n);
    for (int j = 0; j < n; ++j) {
        s.x[j] = uniform_range(gen, -1.0, 1.0);
        s.v[j] = uniform_range(gen, -1.0, 1.0);
    }
    s.x /= s.x.norm();
    s.v /= s.v.norm();
    return s;
}

// two masses, one spring: the smallest network with a zero mode
inline SpringNetwork two_mass_chain(double kappa = 1.0) {
    return SpringNetwork(2, {1.0, 1.0}, {{0, 1, kappa}}, 2);
}

// one mass on a wall spring
inline SpringNetwork single_mass(double kappa = 1.0, double mass = 1.0) {
    return SpringNetwork(1, {mass}, {{0, 0, kappa}}, 1);
}

} // namespace oscsim::testutil
