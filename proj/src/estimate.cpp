#include "oscsim/estimate.hpp"

#include <algorithm>
#include <cmath>

#include "oscsim/rng.hpp"

namespace oscsim {

SubsetOracle SubsetOracle::for_vertices(std::vector<int> indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    SubsetOracle v;
    v.kind = Kind::vertices;
    v.vertices = std::move(indices);
    return v;
}

SubsetOracle SubsetOracle::for_edges(std::vector<std::pair<int, int>> pairs) {
    for (auto& [j, k] : pairs) {
        if (j > k) std::swap(j, k);
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    SubsetOracle v;
    v.kind = Kind::edges;
    v.edges = std::move(pairs);
    return v;
}

namespace {

// Basis positions selected by the subset, for a state of this shape.
std::vector<Eigen::Index> member_positions(const EncodedState& psi,
                                           const SubsetOracle& subset) {
    const int n = oscillator_count(psi);
    std::vector<Eigen::Index> out;
    if (subset.kind == SubsetOracle::Kind::vertices) {
        out.reserve(subset.vertices.size());
        for (int j : subset.vertices) {
            if (j < 0 || j >= n)
                throw std::invalid_argument("subset: vertex index out of range");
            out.push_back(j);
        }
        return out;
    }
    if (psi.kind == EncodingKind::generalized)
        throw std::invalid_argument(
            "subset: edge subsets are not addressable in a generalized encoding");
    out.reserve(subset.edges.size());
    for (const auto& [j, k] : subset.edges) {
        if (j < 0 || k < j || k >= n)
            throw std::invalid_argument("subset: edge pair out of range");
        const std::int64_t nn = n;
        out.push_back(n + (static_cast<std::int64_t>(j) * nn -
                           static_cast<std::int64_t>(j) * (j - 1) / 2 + (k - j)));
    }
    return out;
}

} // namespace

double exact_fraction(const EncodedState& psi, const SubsetOracle& subset) {
    double total = 0.0;
    for (Eigen::Index pos : member_positions(psi, subset))
        total += std::norm(psi.amplitudes[pos]);
    return total;
}

std::int64_t hoeffding_shots(double eps, double delta) {
    return static_cast<std::int64_t>(
        std::ceil(std::log(2.0 / delta) / (2.0 * eps * eps)));
}

EstimateReport sample_estimate(const EncodedState& psi, const SubsetOracle& subset,
                               double eps, double delta, std::uint64_t seed) {
    if (!(eps > 0.0) || eps >= 1.0 || !(delta > 0.0) || delta >= 1.0)
        throw std::invalid_argument("sample_estimate: eps, delta must be in (0,1)");

    const std::vector<Eigen::Index> members = member_positions(psi, subset);
    std::vector<char> in_subset(static_cast<std::size_t>(psi.dim()), 0);
    for (Eigen::Index pos : members) in_subset[static_cast<std::size_t>(pos)] = 1;

    EstimateReport report;
    report.exact_value = exact_fraction(psi, subset);
    report.epsilon = eps;
    report.delta = delta;
    report.seed = seed;
    report.shots_used = hoeffding_shots(eps, delta);
    report.ae_query_model = std::ceil(std::log(1.0 / delta) / eps);

    const CdfSampler sampler(psi.amplitudes.cwiseAbs2());
    std::mt19937_64 gen(seed);
    std::int64_t hits = 0;
    for (std::int64_t s = 0; s < report.shots_used; ++s) {
        const Eigen::Index drawn = sampler.draw(gen);
        hits += in_subset[static_cast<std::size_t>(drawn)];
    }
    report.estimate =
        static_cast<double>(hits) / static_cast<double>(report.shots_used);
    return report;
}

std::vector<std::pair<double, double>> kinetic_energy_timeseries(
    const SpringNetwork& net, const ClassicalState& s0,
    const std::vector<double>& times, const SubsetOracle& subset) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0.0 || (i > 0 && times[i] < times[i - 1]))
            throw std::invalid_argument(
                "kinetic_energy_timeseries: times must be sorted and nonnegative");
    }
    const NormalModes modes = normal_modes(system_operator(net));
    std::vector<std::pair<double, double>> out;
    out.reserve(times.size());
    for (double t : times) {
        const ClassicalState st = evolve_exact(net, modes, s0, t);
        out.emplace_back(t, exact_fraction(encode_primary(net, st), subset));
    }
    return out;
}

} // namespace oscsim
