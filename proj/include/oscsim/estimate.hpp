#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "oscsim/dynamics.hpp"
#include "oscsim/encoding.hpp"

namespace oscsim {

// A subset of basis labels: either oscillator indices (velocity block) or
// spring pairs (j, k), j <= k (stretch block). Indices are 0-based here;
// files and the CLI speak 1-based.
struct SubsetOracle {
    enum class Kind { vertices, edges };

    Kind kind = Kind::vertices;
    std::vector<int> vertices;                  // sorted, unique
    std::vector<std::pair<int, int>> edges;     // sorted, unique, j <= k

    static SubsetOracle for_vertices(std::vector<int> indices);
    static SubsetOracle for_edges(std::vector<std::pair<int, int>> pairs);
};

// <psi| P_V |psi>: the summed squared magnitude over the labels in V. For a
// primary state this is K_V(t)/E (vertices) or U_V(t)/E (edges).
double exact_fraction(const EncodedState& psi, const SubsetOracle& subset);

struct EstimateReport {
    double exact_value = 0.0;
    double estimate = 0.0;
    double epsilon = 0.0;
    double delta = 0.0;
    std::int64_t shots_used = 0;
    double ae_query_model = 0.0; // ceil(ln(1/delta)/eps), reported alongside
    std::uint64_t seed = 0;
};

// Hoeffding sampling baseline: ceil(ln(2/delta) / (2 eps^2)) Born-rule draws
// from |psi|^2, reproducible bit-exactly for a fixed seed.
EstimateReport sample_estimate(const EncodedState& psi, const SubsetOracle& subset,
                               double eps, double delta, std::uint64_t seed);

std::int64_t hoeffding_shots(double eps, double delta);

// (t, K_V(t)/E) rows via one exact evolution + encoding per time.
std::vector<std::pair<double, double>> kinetic_energy_timeseries(
    const SpringNetwork& net, const ClassicalState& s0,
    const std::vector<double>& times, const SubsetOracle& subset);

} // namespace oscsim
