#include "oscsim/gluedtrees.hpp"

#include <cmath>
#include <unordered_set>

#include "oscsim/dynamics.hpp"
#include "oscsim/rng.hpp"
#include "oscsim/spectral.hpp"

namespace oscsim::gluedtrees {

namespace {

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

std::vector<std::uint64_t> random_labels(int count, int bits,
                                         std::mt19937_64& gen) {
    const std::uint64_t space = bits >= 64 ? ~0ULL : (1ULL << bits) - 1ULL;
    std::unordered_set<std::uint64_t> used;
    std::vector<std::uint64_t> labels;
    labels.reserve(static_cast<std::size_t>(count));
    while (static_cast<int>(labels.size()) < count) {
        const std::uint64_t candidate = gen() & space;
        if (used.insert(candidate).second) labels.push_back(candidate);
    }
    return labels;
}

} // namespace

GluedTreesInstance generate(int n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("gluedtrees::generate: need n >= 2");
    const int columns = 2 * n;
    std::vector<int> offsets(static_cast<std::size_t>(columns) + 1, 0);
    for (int l = 1; l <= columns; ++l) {
        const int size = l <= n ? (1 << (l - 1)) : (1 << (2 * n - l));
        offsets[static_cast<std::size_t>(l)] =
            offsets[static_cast<std::size_t>(l - 1)] + size;
    }
    const int total = offsets.back();

    std::mt19937_64 gen(seed);
    std::vector<Spring> springs;

    const auto vertex = [&](int column, int pos) {
        return offsets[static_cast<std::size_t>(column - 1)] + pos;
    };

    // left tree: column l vertex i has children 2i and 2i+1 in column l+1
    for (int l = 1; l < n; ++l) {
        for (int i = 0; i < (1 << (l - 1)); ++i) {
            springs.push_back({vertex(l, i), vertex(l + 1, 2 * i), 1.0});
            springs.push_back({vertex(l, i), vertex(l + 1, 2 * i + 1), 1.0});
        }
    }
    // right tree mirrored: column l vertex i has parent floor(i/2) in l+1
    for (int l = n + 1; l < columns; ++l) {
        for (int i = 0; i < (1 << (2 * n - l)); ++i) {
            springs.push_back({vertex(l, i), vertex(l + 1, i / 2), 1.0});
        }
    }
    // random alternating cycle over the two leaf layers; every leaf ends with
    // gluing degree exactly 2
    const int leaves = 1 << (n - 1);
    std::vector<int> left(static_cast<std::size_t>(leaves));
    std::vector<int> right(static_cast<std::size_t>(leaves));
    for (int i = 0; i < leaves; ++i) {
        left[static_cast<std::size_t>(i)] = vertex(n, i);
        right[static_cast<std::size_t>(i)] = vertex(n + 1, i);
    }
    shuffle_inplace(gen, left);
    shuffle_inplace(gen, right);
    for (int i = 0; i < leaves; ++i) {
        const std::size_t ii = static_cast<std::size_t>(i);
        springs.push_back({std::min(left[ii], right[ii]),
                           std::max(left[ii], right[ii]), 1.0});
        const int next = left[static_cast<std::size_t>((i + 1) % leaves)];
        springs.push_back({std::min(next, right[ii]), std::max(next, right[ii]), 1.0});
    }
    // wall springs mark the two roots
    springs.push_back({0, 0, 1.0});
    springs.push_back({total - 1, total - 1, 1.0});

    GluedTreesInstance inst{
        n,
        SpringNetwork(total, std::vector<double>(static_cast<std::size_t>(total), 1.0),
                      std::move(springs), 3),
        random_labels(total, 2 * n, gen),
        0,
        total - 1,
        std::move(offsets)};
    return inst;
}

ReducedChain reduce_to_chain(int n) {
    if (n < 2) throw std::invalid_argument("reduce_to_chain: need n >= 2");
    const int dim = 2 * n;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    const double root2 = std::sqrt(2.0);
    for (int l = 0; l < dim; ++l) m(l, l) = 3.0;
    for (int l = 0; l + 1 < dim; ++l) {
        const double weight = (l == n - 1) ? 2.0 : root2;
        m(l, l + 1) = -weight;
        m(l + 1, l) = -weight;
    }
    return {n, std::move(m)};
}

Eigen::VectorXd project_to_columns(const GluedTreesInstance& inst,
                                   const Eigen::VectorXd& values) {
    const int columns = 2 * inst.depth_n;
    Eigen::VectorXd z(columns);
    for (int l = 1; l <= columns; ++l) {
        const int begin = inst.column_offsets[static_cast<std::size_t>(l - 1)];
        const int end = inst.column_offsets[static_cast<std::size_t>(l)];
        z[l - 1] = values.segment(begin, end - begin).sum() /
                   std::sqrt(static_cast<double>(end - begin));
    }
    return z;
}

ChainModes chain_modes(const ReducedChain& chain) {
    SymmetricEigen eig = symmetric_eigen(chain.matrix);
    psd_clip(eig.values);
    const Eigen::Index dim = eig.values.size();
    ChainModes modes;
    modes.eigenvalues = eig.values;
    modes.gamma = eig.values.cwiseSqrt();
    modes.endpoint.resize(dim);
    modes.entrance_overlap_sq.resize(dim);
    for (Eigen::Index l = 0; l < dim; ++l) {
        const double first = eig.vectors(0, l);
        const double last = eig.vectors(dim - 1, l);
        modes.endpoint[l] = last * first;
        modes.entrance_overlap_sq[l] = first * first;
    }
    return modes;
}

double exit_velocity(const ChainModes& modes, double t) {
    double total = 0.0;
    for (Eigen::Index l = 0; l < modes.gamma.size(); ++l)
        total += modes.endpoint[l] * std::cos(modes.gamma[l] * t);
    return total;
}

double p_exit(const ReducedChain& chain, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("p_exit: need T > 0");
    const ChainModes modes = chain_modes(chain);
    const Eigen::Index dim = modes.gamma.size();
    double total = 0.0;
    for (Eigen::Index l = 0; l < dim; ++l) {
        for (Eigen::Index lp = 0; lp < dim; ++lp) {
            const double diff = modes.gamma[l] - modes.gamma[lp];
            const double sum = modes.gamma[l] + modes.gamma[lp];
            const double integral = 0.5 * (sinc(diff * T) + sinc(sum * T));
            total += modes.endpoint[l] * modes.endpoint[lp] * integral;
        }
    }
    return total;
}

double p_exit_infinity(const ReducedChain& chain) {
    const ChainModes modes = chain_modes(chain);
    // only the l == l' difference terms survive the average
    return 0.5 * modes.endpoint.squaredNorm();
}

double p_exit_infinity_overlap(const ReducedChain& chain) {
    const ChainModes modes = chain_modes(chain);
    return 0.5 * modes.entrance_overlap_sq.squaredNorm();
}

SpectralReport spectral_report(const ReducedChain& chain) {
    const ChainModes modes = chain_modes(chain);
    const Eigen::Index dim = modes.gamma.size();
    SpectralReport report;
    report.gaps.reserve(static_cast<std::size_t>(dim - 1));
    report.min_gap = std::numeric_limits<double>::infinity();
    report.chain_gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index l = 0; l + 1 < dim; ++l) {
        const double gap = modes.gamma[l + 1] - modes.gamma[l];
        report.gaps.push_back(gap);
        report.min_gap = std::min(report.min_gap, gap);
        report.chain_gap =
            std::min(report.chain_gap, modes.eigenvalues[l + 1] - modes.eigenvalues[l]);
    }
    report.lambda1_overlap = std::sqrt(modes.entrance_overlap_sq[0]);
    report.smallest_eigenvalue = modes.eigenvalues[0];

    // closed-form trial vector for the lowest mode
    const int n = chain.n;
    Eigen::VectorXd v1(2 * n);
    for (int l = 1; l <= n; ++l)
        v1[l - 1] = std::pow(2.0, -0.5 * (2 + n - l));
    for (int l = n + 1; l <= 2 * n; ++l)
        v1[l - 1] = std::pow(2.0, -0.5 * (1 + l - n));
    report.v1_residual = (chain.matrix * v1).norm();
    return report;
}

double scan_time_step() {
    // gamma_max <= sqrt(6): 40+ samples per fastest period
    return std::numbers::pi / (20.0 * std::sqrt(6.0));
}

std::optional<double> find_exit_time(const ReducedChain& chain, double threshold) {
    if (!(threshold > 0.0) || threshold >= 1.0)
        throw std::invalid_argument("find_exit_time: threshold must be in (0,1)");
    const ChainModes modes = chain_modes(chain);
    const double horizon =
        10.0 * std::pow(static_cast<double>(chain.n), 4.0);
    const double step = scan_time_step();
    for (double t = 0.0; t <= horizon; t += step) {
        const double zdot = exit_velocity(modes, t);
        if (zdot * zdot >= threshold) return t;
    }
    return std::nullopt;
}

SolveResult solve_instance(const GluedTreesInstance& inst, std::uint64_t rng_seed) {
    const int n = inst.depth_n;
    SolveResult result;

    const ReducedChain chain = reduce_to_chain(n);
    const double threshold = 1.0 / (8.0 * n);
    const std::optional<double> when = find_exit_time(chain, threshold);
    if (!when) return result;
    result.evolution_time = *when;

    // prepare |psi(t)>: classical solve of the network plus the encoding map
    ClassicalState start;
    start.x = Eigen::VectorXd::Zero(inst.network.size());
    start.v = Eigen::VectorXd::Zero(inst.network.size());
    start.v[inst.entrance_id] = 1.0;
    const ClassicalState evolved = evolve_exact(inst.network, start, *when);
    const EncodedState psi = encode_primary(inst.network, evolved);

    // query-count model per preparation, from the sparse-simulation estimate
    const double tau = *when * std::sqrt(inst.network.aleph() * inst.network.sparsity());
    const std::int64_t queries_per_shot =
        static_cast<std::int64_t>(std::ceil(tau + std::log2(100.0)));

    const int max_shots =
        static_cast<int>(std::ceil(std::log(1e6) / threshold));
    const CdfSampler sampler(psi.amplitudes.cwiseAbs2());
    std::mt19937_64 gen(rng_seed);
    const int vertices = inst.network.size();
    for (int shot = 0; shot < max_shots; ++shot) {
        ++result.shots;
        result.quantum_query_count += queries_per_shot;
        const Eigen::Index drawn = sampler.draw(gen);
        if (drawn >= vertices) continue; // stretch block: not an oscillator label
        const int candidate = static_cast<int>(drawn);
        ++result.verification_queries;
        ++result.quantum_query_count;
        if (inst.network.wall_spring(candidate) > 0.0 &&
            inst.labels[static_cast<std::size_t>(candidate)] !=
                inst.labels[static_cast<std::size_t>(inst.entrance_id)]) {
            result.success = true;
            result.exit_label = inst.labels[static_cast<std::size_t>(candidate)];
            return result;
        }
    }
    return result;
}

} // namespace oscsim::gluedtrees
