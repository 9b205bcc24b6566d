#include "oscsim/blockenc.hpp"

#include <cmath>
#include <limits>

#include "oscsim/spectral.hpp"

namespace oscsim::blockenc {

namespace {

using Sparse = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

int next_power_of_two(int v) {
    int p = 1;
    while (p < v) p <<= 1;
    return p;
}

// amplitude machinery shared by the direct block assembly and the explicit
// unitary: the grid count for row mass m_j and spring kappa_jk
struct AmplitudeGrid {
    double kappa_max = 0.0;
    double m_max = 0.0;
    double aleph = 0.0;
    double grid_squared = 0.0; // 2^(2r)
    std::int64_t grid = 0;     // 2^r
    QuantizationConfig cfg;

    explicit AmplitudeGrid(const SpringNetwork& net, const QuantizationConfig& c)
        : kappa_max(net.kappa_max()), m_max(net.mass_max()), aleph(net.aleph()),
          grid_squared(std::ldexp(1.0, 2 * c.r)),
          grid(std::int64_t(1) << c.r), cfg(c) {}

    double kappa_word(double kappa) const {
        return kappa_max == 0.0
                   ? 0.0
                   : kappa_max *
                         static_cast<double>(quantize(kappa, kappa_max, cfg.r_kappa)) /
                         std::ldexp(1.0, cfg.r_kappa);
    }

    double mass_word(double mass) const {
        return m_max * static_cast<double>(quantize(mass, m_max, cfg.r_m)) /
               std::ldexp(1.0, cfg.r_m);
    }

    // ties count as success
    bool success(double kappa_q, double mass_q, std::int64_t xv) const {
        return kappa_q * grid_squared >=
               static_cast<double>(xv) * static_cast<double>(xv) * aleph * mass_q;
    }

    // #{xv in [1, 2^r] : success}; the predicate is monotone in xv
    std::int64_t count(double kappa, double mass) const {
        const double kappa_q = kappa_word(kappa);
        const double mass_q = mass_word(mass);
        if (!success(kappa_q, mass_q, 1)) return 0;
        std::int64_t lo = 1, hi = grid;
        while (lo < hi) {
            const std::int64_t mid = lo + (hi - lo + 1) / 2;
            if (success(kappa_q, mass_q, mid))
                lo = mid;
            else
                hi = mid - 1;
        }
        return lo;
    }

    double amplitude(double kappa, double mass) const {
        return static_cast<double>(count(kappa, mass)) / static_cast<double>(grid);
    }
};

} // namespace

std::uint64_t quantize(double value, double max_value, int bits) {
    if (bits < 1 || bits > 62)
        throw std::invalid_argument("quantize: bits out of range");
    if (!(value >= 0.0) || value > max_value)
        throw std::invalid_argument("quantize: need 0 <= value <= max_value");
    if (max_value == 0.0) return 0;
    if (value == max_value) return std::uint64_t(1) << bits;
    const double scaled = value / max_value * std::ldexp(1.0, bits);
    const auto word = static_cast<std::uint64_t>(scaled);
    return std::min(word, std::uint64_t(1) << bits);
}

SpringNetwork pad_to_power_of_two(const SpringNetwork& net) {
    const int padded = next_power_of_two(net.size());
    if (padded == net.size()) return net;
    std::vector<double> masses = net.masses();
    masses.resize(static_cast<std::size_t>(padded), 1.0);
    return SpringNetwork(padded, std::move(masses), net.springs(), net.sparsity());
}

Eigen::SparseMatrix<double> padded_incidence(const SpringNetwork& padded) {
    const int n = padded.size();
    std::vector<Triplet> entries;
    for (const Spring& s : padded.springs()) {
        if (s.kappa == 0.0) continue;
        const int col = s.j * n + s.k;
        entries.emplace_back(s.j, col, std::sqrt(s.kappa / padded.mass(s.j)));
        if (s.k != s.j)
            entries.emplace_back(s.k, col, -std::sqrt(s.kappa / padded.mass(s.k)));
    }
    Sparse b(n, static_cast<std::int64_t>(n) * n);
    b.setFromTriplets(entries.begin(), entries.end());
    return b;
}

BlockEncoding block_encode_B(const SpringNetwork& net, const QuantizationConfig& cfg) {
    if (cfg.r < 1 || cfg.r > 20 || cfg.r_m < 1 || cfg.r_m > 62 || cfg.r_kappa < 1 ||
        cfg.r_kappa > 62)
        throw std::invalid_argument("block_encode_B: bit budget out of range");
    const SpringNetwork padded = pad_to_power_of_two(net);
    const int n = padded.size();
    const int d_padded = next_power_of_two(padded.sparsity());
    const AmplitudeGrid grid(padded, cfg);

    BlockEncoding enc;
    enc.config = cfg;
    enc.padded_n = n;
    enc.padded_d = d_padded;
    enc.lambda = std::sqrt(2.0 * padded.aleph() * d_padded);
    enc.ancilla_dims = {1 << cfg.r, 2, 2};

    const double branch = 1.0 / std::sqrt(2.0 * d_padded);
    std::vector<Triplet> entries;
    for (const Spring& s : padded.springs()) {
        const int col = s.j * n + s.k;
        // row j sees neighbor k (k >= j): positive branch
        entries.emplace_back(s.j, col, branch * grid.amplitude(s.kappa, padded.mass(s.j)));
        // row k sees neighbor j (j < k): swapped branch, negative sign
        if (s.k != s.j)
            entries.emplace_back(s.k, col,
                                 -branch * grid.amplitude(s.kappa, padded.mass(s.k)));
    }
    enc.block.resize(n, static_cast<std::int64_t>(n) * n);
    enc.block.setFromTriplets(entries.begin(), entries.end());

    // worst-case amplitude error from the bit budgets; the two-per-column /
    // d-per-row sparsity makes it an operator-norm bound as well
    const double delta_m = padded.mass_max() * std::ldexp(1.0, -cfg.r_m);
    const double m_floor = padded.mass_min() - delta_m;
    if (m_floor > 0.0 && padded.kappa_max() > 0.0) {
        enc.predicted_error =
            std::ldexp(1.0, -cfg.r) +
            std::sqrt(padded.mass_min() / m_floor) * std::pow(2.0, -0.5 * cfg.r_kappa) +
            std::sqrt(padded.mass_min()) * delta_m / (2.0 * std::pow(m_floor, 1.5));
    } else if (padded.kappa_max() == 0.0) {
        enc.predicted_error = std::ldexp(1.0, -cfg.r);
    } else {
        enc.predicted_error = std::numeric_limits<double>::infinity();
    }

    if (enc.lambda > 0.0) {
        const Sparse target = padded_incidence(padded) / enc.lambda;
        enc.achieved_error = spectral_norm(enc.block - target);
    } else {
        enc.achieved_error = spectral_norm(enc.block);
    }
    return enc;
}

BlockEncoding block_encode_H(const SpringNetwork& net, const BlockEncoding& be_b) {
    const int n = be_b.padded_n;
    const std::int64_t nn = static_cast<std::int64_t>(n) * n;

    BlockEncoding enc;
    enc.config = be_b.config;
    enc.padded_n = n;
    enc.padded_d = be_b.padded_d;
    enc.lambda = be_b.lambda;
    enc.predicted_error = be_b.predicted_error;
    enc.ancilla_dims = {1 << be_b.config.r, 2, 2, 2};

    // rows of B land on pair states (j, 0); -[[0, B],[B^T, 0]] over (sigma, j, k)
    std::vector<Triplet> entries;
    for (int outer = 0; outer < be_b.block.outerSize(); ++outer) {
        for (Sparse::InnerIterator it(be_b.block, outer); it; ++it) {
            const std::int64_t row = static_cast<std::int64_t>(it.row()) * n;
            entries.emplace_back(row, nn + it.col(), -it.value());
            entries.emplace_back(nn + it.col(), row, -it.value());
        }
    }
    enc.block.resize(2 * nn, 2 * nn);
    enc.block.setFromTriplets(entries.begin(), entries.end());

    // measure the assembled anti-block against the padded target; its
    // singular values are those of the top-right difference, whose nonzero
    // rows sit at pair states (j, 0), so that block compacts to N x N^2
    const SpringNetwork padded = pad_to_power_of_two(net);
    Sparse target(2 * nn, 2 * nn);
    {
        const Sparse b = padded_incidence(padded);
        std::vector<Triplet> t_entries;
        for (int outer = 0; outer < b.outerSize(); ++outer) {
            for (Sparse::InnerIterator it(b, outer); it; ++it) {
                const std::int64_t row = static_cast<std::int64_t>(it.row()) * n;
                t_entries.emplace_back(row, nn + it.col(), -it.value() / enc.lambda);
                t_entries.emplace_back(nn + it.col(), row, -it.value() / enc.lambda);
            }
        }
        target.setFromTriplets(t_entries.begin(), t_entries.end());
    }
    const Sparse diff = enc.block - target;
    std::vector<Triplet> compact_entries;
    for (int outer = 0; outer < diff.outerSize(); ++outer) {
        for (Sparse::InnerIterator it(diff, outer); it; ++it) {
            if (it.row() >= nn || it.col() < nn) continue; // top-right block
            if (it.row() % n != 0)
                throw std::runtime_error("block_encode_H: stray row in the difference");
            compact_entries.emplace_back(it.row() / n, it.col() - nn, it.value());
        }
    }
    Sparse compact(n, nn);
    compact.setFromTriplets(compact_entries.begin(), compact_entries.end());
    enc.achieved_error = spectral_norm(compact);
    return enc;
}

double spectral_norm(const Eigen::SparseMatrix<double>& m) {
    // Gram matrix over the smaller side
    const bool wide = m.cols() >= m.rows();
    const Sparse gram_sparse = wide ? Sparse(m * m.transpose()) : Sparse(m.transpose() * m);
    const Eigen::MatrixXd gram = Eigen::MatrixXd(gram_sparse);
    if (gram.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

namespace {

// register layout for U_B: ((j * N + k) * 2^r + x) * 4 + tf * 2 + sf
struct Layout {
    int n = 0;
    std::int64_t grid = 0;
    std::int64_t dim = 0;

    Layout(int n_, int r) : n(n_), grid(std::int64_t(1) << r) {
        dim = static_cast<std::int64_t>(n) * n * grid * 4;
    }

    std::int64_t index(int j, int k, std::int64_t x, int tf, int sf) const {
        return (((static_cast<std::int64_t>(j) * n + k) * grid + x) * 2 + tf) * 2 + sf;
    }
};

// Householder reflection sending e_0 to the uniform superposition over the
// first d entries
Sparse superposition_factor(const Layout& lay, int d_padded) {
    std::vector<Triplet> entries;
    const double inv_root = 1.0 / std::sqrt(static_cast<double>(d_padded));
    Eigen::VectorXd v = Eigen::VectorXd::Zero(lay.n);
    v[0] = 1.0 - inv_root;
    for (int i = 1; i < d_padded; ++i) v[i] = -inv_root;
    const double vtv = v.squaredNorm();
    for (int j = 0; j < lay.n; ++j) {
        for (int a = 0; a < lay.n; ++a) {
            for (int b = 0; b < lay.n; ++b) {
                double value = (a == b) ? 1.0 : 0.0;
                if (vtv > 0.0 && a < d_padded && b < d_padded)
                    value -= 2.0 * v[a] * v[b] / vtv;
                if (value == 0.0) continue;
                for (std::int64_t x = 0; x < lay.grid; ++x)
                    for (int tf = 0; tf < 2; ++tf)
                        for (int sf = 0; sf < 2; ++sf)
                            entries.emplace_back(lay.index(j, a, x, tf, sf),
                                                 lay.index(j, b, x, tf, sf), value);
            }
        }
    }
    Sparse m(lay.dim, lay.dim);
    m.setFromTriplets(entries.begin(), entries.end());
    return m;
}

// slot -> neighbor permutation on the k register, one bijection per row j
Sparse neighbor_factor(const Layout& lay, const SpringNetwork& padded) {
    const int n = lay.n;
    std::vector<Triplet> entries;
    for (int j = 0; j < n; ++j) {
        std::vector<int> perm;
        std::vector<char> used(static_cast<std::size_t>(n), 0);
        for (const Spring& s : padded.springs()) {
            if (s.kappa == 0.0) continue;
            int other = -1;
            if (s.j == j) other = s.k;
            else if (s.k == j) other = s.j;
            if (other < 0 || used[static_cast<std::size_t>(other)]) continue;
            used[static_cast<std::size_t>(other)] = 1;
            perm.push_back(other);
        }
        for (int k = 0; k < n; ++k)
            if (!used[static_cast<std::size_t>(k)]) perm.push_back(k);
        for (int slot = 0; slot < n; ++slot)
            for (std::int64_t x = 0; x < lay.grid; ++x)
                for (int tf = 0; tf < 2; ++tf)
                    for (int sf = 0; sf < 2; ++sf)
                        entries.emplace_back(
                            lay.index(j, perm[static_cast<std::size_t>(slot)], x, tf, sf),
                            lay.index(j, slot, x, tf, sf), 1.0);
    }
    Sparse m(lay.dim, lay.dim);
    m.setFromTriplets(entries.begin(), entries.end());
    return m;
}

// Hadamard transform on the grid register
Sparse hadamard_factor(const Layout& lay, int r) {
    const double scale = std::pow(2.0, -0.5 * r);
    std::vector<Triplet> entries;
    entries.reserve(static_cast<std::size_t>(lay.dim) * static_cast<std::size_t>(lay.grid));
    for (int j = 0; j < lay.n; ++j)
        for (int k = 0; k < lay.n; ++k)
            for (std::int64_t x = 0; x < lay.grid; ++x)
                for (std::int64_t y = 0; y < lay.grid; ++y) {
                    const int parity = __builtin_popcountll(x & y) & 1;
                    const double value = parity ? -scale : scale;
                    for (int tf = 0; tf < 2; ++tf)
                        for (int sf = 0; sf < 2; ++sf)
                            entries.emplace_back(lay.index(j, k, x, tf, sf),
                                                 lay.index(j, k, y, tf, sf), value);
                }
    Sparse m(lay.dim, lay.dim);
    m.setFromTriplets(entries.begin(), entries.end());
    return m;
}

// flip the test flag unless the comparison passes for xv = x + 1
Sparse comparison_factor(const Layout& lay, const SpringNetwork& padded,
                         const AmplitudeGrid& grid) {
    std::vector<Triplet> entries;
    for (int j = 0; j < lay.n; ++j) {
        const double mass_q = grid.mass_word(padded.mass(j));
        for (int k = 0; k < lay.n; ++k) {
            double kappa = 0.0;
            for (const Spring& s : padded.springs()) {
                if ((s.j == j && s.k == k) || (s.j == k && s.k == j)) {
                    kappa = s.kappa;
                    break;
                }
            }
            const double kappa_q = grid.kappa_word(kappa);
            for (std::int64_t x = 0; x < lay.grid; ++x) {
                const int flip = grid.success(kappa_q, mass_q, x + 1) ? 0 : 1;
                for (int tf = 0; tf < 2; ++tf)
                    for (int sf = 0; sf < 2; ++sf)
                        entries.emplace_back(lay.index(j, k, x, tf ^ flip, sf),
                                             lay.index(j, k, x, tf, sf), 1.0);
            }
        }
    }
    Sparse m(lay.dim, lay.dim);
    m.setFromTriplets(entries.begin(), entries.end());
    return m;
}

// sf ^= [k < j], then swap (j, k) when sf is set
Sparse order_factor(const Layout& lay) {
    std::vector<Triplet> mark, swap_entries;
    for (int j = 0; j < lay.n; ++j)
        for (int k = 0; k < lay.n; ++k)
            for (std::int64_t x = 0; x < lay.grid; ++x)
                for (int tf = 0; tf < 2; ++tf)
                    for (int sf = 0; sf < 2; ++sf) {
                        mark.emplace_back(lay.index(j, k, x, tf, sf ^ (k < j ? 1 : 0)),
                                          lay.index(j, k, x, tf, sf), 1.0);
                        swap_entries.emplace_back(
                            sf ? lay.index(k, j, x, tf, sf) : lay.index(j, k, x, tf, sf),
                            lay.index(j, k, x, tf, sf), 1.0);
                    }
    Sparse m1(lay.dim, lay.dim), m2(lay.dim, lay.dim);
    m1.setFromTriplets(mark.begin(), mark.end());
    m2.setFromTriplets(swap_entries.begin(), swap_entries.end());
    return Sparse(m2 * m1);
}

// HZ on the swap flag: |0> -> (|0>+|1>)/sqrt2, |1> -> (-|0>+|1>)/sqrt2
Sparse sign_factor(const Layout& lay) {
    const double inv_root2 = 1.0 / std::sqrt(2.0);
    std::vector<Triplet> entries;
    for (int j = 0; j < lay.n; ++j)
        for (int k = 0; k < lay.n; ++k)
            for (std::int64_t x = 0; x < lay.grid; ++x)
                for (int tf = 0; tf < 2; ++tf) {
                    entries.emplace_back(lay.index(j, k, x, tf, 0),
                                         lay.index(j, k, x, tf, 0), inv_root2);
                    entries.emplace_back(lay.index(j, k, x, tf, 1),
                                         lay.index(j, k, x, tf, 0), inv_root2);
                    entries.emplace_back(lay.index(j, k, x, tf, 0),
                                         lay.index(j, k, x, tf, 1), -inv_root2);
                    entries.emplace_back(lay.index(j, k, x, tf, 1),
                                         lay.index(j, k, x, tf, 1), inv_root2);
                }
    Sparse m(lay.dim, lay.dim);
    m.setFromTriplets(entries.begin(), entries.end());
    return m;
}

constexpr std::int64_t kUnitaryDimCap = std::int64_t(1) << 17;

} // namespace

Eigen::SparseMatrix<double> materialize_unitary_B(const SpringNetwork& net,
                                                  const QuantizationConfig& cfg) {
    const SpringNetwork padded = pad_to_power_of_two(net);
    const Layout lay(padded.size(), cfg.r);
    if (lay.dim > kUnitaryDimCap)
        throw resource_limit_error("materialize_unitary_B: register space too large");
    const int d_padded = next_power_of_two(padded.sparsity());
    const AmplitudeGrid grid(padded, cfg);

    const Sparse u_dagger =
        Sparse(sign_factor(lay) *
               Sparse(order_factor(lay) *
                      Sparse(hadamard_factor(lay, cfg.r) *
                             Sparse(comparison_factor(lay, padded, grid) *
                                    Sparse(hadamard_factor(lay, cfg.r) *
                                           Sparse(neighbor_factor(lay, padded) *
                                                  superposition_factor(lay, d_padded)))))));
    return Sparse(u_dagger.transpose());
}

Eigen::SparseMatrix<double> extract_block_B(const Eigen::SparseMatrix<double>& u,
                                            int padded_n, const QuantizationConfig& cfg) {
    // block[j, (j', k')] = <j, k=0, anc=0| U |j', k', anc=0>
    const Layout lay(padded_n, cfg.r);
    std::vector<Triplet> entries;
    for (int outer = 0; outer < u.outerSize(); ++outer) {
        for (Sparse::InnerIterator it(u, outer); it; ++it) {
            const std::int64_t col = it.col();
            const std::int64_t row = it.row();
            if (col % (lay.grid * 4) != 0 || row % (lay.grid * 4) != 0) continue;
            const std::int64_t row_pair = row / (lay.grid * 4);
            if (row_pair % padded_n != 0) continue; // k register must be 0
            entries.emplace_back(row_pair / padded_n, col / (lay.grid * 4), it.value());
        }
    }
    Sparse block(padded_n, static_cast<std::int64_t>(padded_n) * padded_n);
    block.setFromTriplets(entries.begin(), entries.end());
    return block;
}

Eigen::SparseMatrix<double> materialize_unitary_H(const SpringNetwork& net,
                                                  const QuantizationConfig& cfg) {
    const SpringNetwork padded = pad_to_power_of_two(net);
    const int n = padded.size();
    const Layout lay(n, cfg.r);
    if (2 * lay.dim * 2 > kUnitaryDimCap)
        throw resource_limit_error("materialize_unitary_H: register space too large");
    const Sparse u_b = materialize_unitary_B(net, cfg);

    // layout: sigma (2) x [j,k,x,tf,sf] (lay.dim) x c (2)
    const std::int64_t dim = 2 * lay.dim * 2;
    const auto index = [&](int sigma, std::int64_t inner, int c) {
        return (sigma * lay.dim + inner) * 2 + c;
    };

    // T = |0><1|_sigma (x) U_B (x) I_c
    std::vector<Triplet> t_entries;
    for (int outer = 0; outer < u_b.outerSize(); ++outer)
        for (Sparse::InnerIterator it(u_b, outer); it; ++it)
            for (int c = 0; c < 2; ++c)
                t_entries.emplace_back(index(0, it.row(), c), index(1, it.col(), c),
                                       it.value());
    Sparse t(dim, dim);
    t.setFromTriplets(t_entries.begin(), t_entries.end());

    // U_cond = [[P, P - I], [P - I, P]] over c, with P = |k=0><k=0|
    std::vector<Triplet> cond_entries;
    for (int sigma = 0; sigma < 2; ++sigma) {
        for (std::int64_t inner = 0; inner < lay.dim; ++inner) {
            const std::int64_t pair = inner / (lay.grid * 4);
            const bool k_zero = (pair % n) == 0;
            const double p = k_zero ? 1.0 : 0.0;
            for (int c = 0; c < 2; ++c) {
                cond_entries.emplace_back(index(sigma, inner, c), index(sigma, inner, c), p);
                cond_entries.emplace_back(index(sigma, inner, c), index(sigma, inner, 1 - c),
                                          p - 1.0);
            }
        }
    }
    Sparse cond(dim, dim);
    cond.setFromTriplets(cond_entries.begin(), cond_entries.end());
    cond.prune(0.0);

    Sparse upper = Sparse(cond * t);
    Sparse u_h = Sparse(-upper - Sparse(upper.transpose()));
    u_h.prune(0.0);
    return u_h;
}

Eigen::SparseMatrix<double> extract_block_H(const Eigen::SparseMatrix<double>& u,
                                            int padded_n, const QuantizationConfig& cfg) {
    // system index (sigma, j, k) with all of (x, tf, sf, c) projected on zero
    const Layout lay(padded_n, cfg.r);
    const std::int64_t anc = lay.grid * 4;
    const std::int64_t nn = static_cast<std::int64_t>(padded_n) * padded_n;
    std::vector<Triplet> entries;
    for (int outer = 0; outer < u.outerSize(); ++outer) {
        for (Sparse::InnerIterator it(u, outer); it; ++it) {
            const std::int64_t row = it.row();
            const std::int64_t col = it.col();
            if (row % 2 != 0 || col % 2 != 0) continue; // c register
            const std::int64_t row_inner = (row / 2) % lay.dim;
            const std::int64_t col_inner = (col / 2) % lay.dim;
            if (row_inner % anc != 0 || col_inner % anc != 0) continue;
            const std::int64_t row_sys =
                (row / 2 / lay.dim) * nn + row_inner / anc;
            const std::int64_t col_sys =
                (col / 2 / lay.dim) * nn + col_inner / anc;
            entries.emplace_back(row_sys, col_sys, it.value());
        }
    }
    Sparse block(2 * nn, 2 * nn);
    block.setFromTriplets(entries.begin(), entries.end());
    return block;
}

SimulationCost simulation_cost_model(const SpringNetwork& net, double t, double eps) {
    if (!(t >= 0.0) || !(eps > 0.0) || eps >= 1.0)
        throw std::invalid_argument("simulation_cost_model: inputs out of range");
    SimulationCost cost;
    cost.tau = t * std::sqrt(net.aleph() * net.sparsity());
    cost.queries = cost.tau + std::log2(1.0 / eps);
    cost.eps_prime = cost.queries > 0.0 ? eps / cost.queries : eps;
    const double arg = std::max(
        2.0, net.size() * cost.tau * net.mass_max() / (eps * net.mass_min()));
    cost.gates = cost.queries * std::log2(arg) * std::log2(arg);
    return cost;
}

InitialStatePrep prepare_initial_state(const SpringNetwork& net,
                                       const Eigen::VectorXd& x0,
                                       const Eigen::VectorXd& v0) {
    ClassicalState state{x0, v0, 0.0};
    InitialStatePrep prep;
    prep.psi0 = encode_primary(net, state); // throws on E = 0
    const double alpha = v0.norm();
    const double beta = x0.norm();
    const double denom = net.mass_max() * alpha * alpha +
                         2.0 * net.kappa_max() * net.sparsity() * beta * beta;
    prep.success_amplitude = std::sqrt(2.0 * prep.psi0.energy / denom);
    prep.rounds_estimate = std::ceil(1.0 / prep.success_amplitude);
    return prep;
}

} // namespace oscsim::blockenc
