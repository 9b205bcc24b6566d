#include "oscsim/bqp.hpp"

#include <cmath>
#include <numbers>

#include "oscsim/spectral.hpp"

namespace oscsim::bqp {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// Basis convention for the (q+1)-qubit register of dimension 2^(q+1):
// bit 0 (LSB) is the ancilla, bit 1 is qubit q, ..., bit q is qubit 1.
int bit_of_qubit(int qubits, int qubit) { return qubits + 1 - qubit; }

// W_l as a sparse symmetric 2^(q+1) x 2^(q+1) matrix with entries in
// {0, 1/sqrt(2), 1}.
Eigen::SparseMatrix<double> lifted_gate(const Gate& gate, int qubits) {
    const int dim = 1 << (qubits + 1);
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(2 * dim));
    const double inv_root2 = 1.0 / std::sqrt(2.0);
    switch (gate.kind) {
    case GateKind::pauli_x: {
        const int mask = 1 << bit_of_qubit(qubits, gate.target);
        for (int r = 0; r < dim; ++r) entries.emplace_back(r ^ mask, r, 1.0);
        break;
    }
    case GateKind::toffoli: {
        const int c1 = 1 << bit_of_qubit(qubits, gate.control1);
        const int c2 = 1 << bit_of_qubit(qubits, gate.control2);
        const int mask = 1 << bit_of_qubit(qubits, gate.target);
        for (int r = 0; r < dim; ++r) {
            const int out = ((r & c1) && (r & c2)) ? (r ^ mask) : r;
            entries.emplace_back(out, r, 1.0);
        }
        break;
    }
    case GateKind::hadamard: {
        // encoded form on (qubit q, ancilla): pairs within each 4-block
        //   |00> -> (|00> + |10>)/sqrt2     |10> -> (|00> + |11>)/sqrt2
        //   |01> -> (|01> + |11>)/sqrt2     |11> -> (|01> + |10>)/sqrt2
        for (int high = 0; high < dim / 4; ++high) {
            const int base = high << 2;
            entries.emplace_back(base + 0, base + 0, inv_root2);
            entries.emplace_back(base + 2, base + 0, inv_root2);
            entries.emplace_back(base + 1, base + 1, inv_root2);
            entries.emplace_back(base + 3, base + 1, inv_root2);
            entries.emplace_back(base + 0, base + 2, inv_root2);
            entries.emplace_back(base + 3, base + 2, inv_root2);
            entries.emplace_back(base + 1, base + 3, inv_root2);
            entries.emplace_back(base + 2, base + 3, inv_root2);
        }
        break;
    }
    }
    Eigen::SparseMatrix<double> w(dim, dim);
    w.setFromTriplets(entries.begin(), entries.end());
    return w;
}

// The unencoded gate on the computational register alone (dimension 2^q).
void apply_gate(const Gate& gate, int qubits, Eigen::VectorXd& state) {
    const int dim = 1 << qubits;
    const auto bit = [&](int qubit) { return qubits - qubit; };
    switch (gate.kind) {
    case GateKind::pauli_x: {
        const int mask = 1 << bit(gate.target);
        for (int r = 0; r < dim; ++r)
            if (r & mask) std::swap(state[r], state[r ^ mask]);
        break;
    }
    case GateKind::toffoli: {
        const int c1 = 1 << bit(gate.control1);
        const int c2 = 1 << bit(gate.control2);
        const int mask = 1 << bit(gate.target);
        for (int r = 0; r < dim; ++r)
            if ((r & c1) && (r & c2) && (r & mask))
                std::swap(state[r], state[r ^ mask]);
        break;
    }
    case GateKind::hadamard: {
        const int mask = 1 << bit(gate.target);
        const double inv_root2 = 1.0 / std::sqrt(2.0);
        for (int r = 0; r < dim; ++r) {
            if (r & mask) continue;
            const double lo = state[r];
            const double hi = state[r | mask];
            state[r] = inv_root2 * (lo + hi);
            state[r | mask] = inv_root2 * (lo - hi);
        }
        break;
    }
    }
}

} // namespace

void validate_circuit(const CircuitSpec& circuit) {
    const int q = circuit.qubits;
    if (q < 1) throw std::invalid_argument("circuit: need at least one qubit");
    if (circuit.gates.empty())
        throw std::invalid_argument("circuit: need at least one gate");
    bool previous_was_h = false;
    for (const Gate& g : circuit.gates) {
        switch (g.kind) {
        case GateKind::hadamard:
            if (g.target != q)
                throw std::invalid_argument("circuit: Hadamards must act on qubit q");
            if (previous_was_h)
                throw std::invalid_argument("circuit: two consecutive Hadamards");
            previous_was_h = true;
            break;
        case GateKind::pauli_x:
            if (g.target < 1 || g.target > q)
                throw std::invalid_argument("circuit: X target out of range");
            previous_was_h = false;
            break;
        case GateKind::toffoli:
            if (q < 3)
                throw std::invalid_argument("circuit: Toffoli needs three qubits");
            if (g.target < 1 || g.target > q || g.control1 < 1 || g.control1 > q ||
                g.control2 < 1 || g.control2 > q)
                throw std::invalid_argument("circuit: Toffoli index out of range");
            if (g.control1 == g.control2 || g.control1 == g.target ||
                g.control2 == g.target)
                throw std::invalid_argument("circuit: Toffoli indices must differ");
            previous_was_h = false;
            break;
        }
    }
}

BqpInstance compile_circuit(const CircuitSpec& circuit) {
    validate_circuit(circuit);
    const int q = circuit.qubits;
    const int length = circuit.length();
    const int block = 1 << (q + 1);
    const std::int64_t n = static_cast<std::int64_t>(length + 1) * block;
    if (n > (std::int64_t(1) << 24))
        throw resource_limit_error("compile_circuit: instance too large");

    std::vector<Eigen::Triplet<double>> entries;
    for (int c = 0; c < static_cast<int>(n); ++c) entries.emplace_back(c, c, 4.0);
    for (int g = 0; g < length; ++g) {
        const Eigen::SparseMatrix<double> w = lifted_gate(circuit.gates[static_cast<std::size_t>(g)], q);
        const int row_base = g * block;
        const int col_base = (g + 1) * block;
        for (int outer = 0; outer < w.outerSize(); ++outer) {
            for (Eigen::SparseMatrix<double>::InnerIterator it(w, outer); it; ++it) {
                entries.emplace_back(row_base + static_cast<int>(it.row()),
                                     col_base + static_cast<int>(it.col()), -it.value());
                entries.emplace_back(col_base + static_cast<int>(it.col()),
                                     row_base + static_cast<int>(it.row()), -it.value());
            }
        }
    }
    Eigen::SparseMatrix<double> a(n, n);
    a.setFromTriplets(entries.begin(), entries.end());

    // recover the spring network: kappa_jk = -a_jk off the diagonal and
    // kappa_jj = 4 - sum_{k != j} kappa_jk
    std::vector<Spring> springs;
    Eigen::VectorXd row_offdiag = Eigen::VectorXd::Zero(n);
    for (int outer = 0; outer < a.outerSize(); ++outer) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(a, outer); it; ++it) {
            if (it.row() == it.col()) continue;
            row_offdiag[it.row()] += -it.value();
            if (it.row() < it.col())
                springs.push_back({static_cast<int>(it.row()),
                                   static_cast<int>(it.col()), -it.value()});
        }
    }
    for (int j = 0; j < static_cast<int>(n); ++j) {
        const double wall = 4.0 - row_offdiag[j];
        if (!(wall > 0.0))
            throw std::runtime_error("compile_circuit: nonpositive wall spring");
        springs.push_back({j, j, wall});
    }

    BqpInstance inst{circuit,
                     std::move(a),
                     SpringNetwork(static_cast<int>(n),
                                   std::vector<double>(static_cast<std::size_t>(n), 1.0),
                                   std::move(springs), 4),
                     length * block,
                     Eigen::VectorXd::Zero(n)};
    inst.initial_v[0] = 1.0;
    inst.initial_v[1] = -1.0;
    return inst;
}

std::vector<Eigen::VectorXd> prefix_states(const CircuitSpec& circuit) {
    const int dim = 1 << circuit.qubits;
    Eigen::VectorXd state = Eigen::VectorXd::Zero(dim);
    state[0] = 1.0;
    std::vector<Eigen::VectorXd> states;
    states.reserve(circuit.gates.size() + 1);
    states.push_back(state);
    for (const Gate& g : circuit.gates) {
        apply_gate(g, circuit.qubits, state);
        states.push_back(state);
    }
    return states;
}

RunResult run_instance(const BqpInstance& inst, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("run_instance: need t >= 0");
    const int n = inst.dimension();
    if (n > 4096)
        throw resource_limit_error("run_instance: dense eigensolve cap exceeded");

    const NormalModes modes = normal_modes(Eigen::MatrixXd(inst.a));
    const Eigen::VectorXd coeff = modes.vectors.transpose() * inst.initial_v;
    Eigen::VectorXd rotated(coeff.size());
    for (Eigen::Index k = 0; k < coeff.size(); ++k)
        rotated[k] = std::cos(modes.omega[k] * t) * coeff[k];
    RunResult result;
    result.velocity = modes.vectors * rotated;
    result.kinetic_fraction_output =
        0.5 * result.velocity[inst.output_index] * result.velocity[inst.output_index];

    // clock-expansion form of the same vector
    const int length = inst.circuit.length();
    const int block = 1 << (inst.circuit.qubits + 1);
    const SymmetricEigen chain = symmetric_eigen(clock_chain(length));
    const std::vector<Eigen::VectorXd> states = prefix_states(inst.circuit);
    Eigen::VectorXd expected = Eigen::VectorXd::Zero(n);
    const double inv_root2 = 1.0 / std::sqrt(2.0);
    for (int c = 0; c <= length; ++c) {
        double alpha = 0.0;
        for (Eigen::Index k = 0; k < chain.values.size(); ++k)
            alpha += chain.vectors(c, k) * chain.vectors(0, k) *
                     std::cos(std::sqrt(chain.values[k]) * t);
        const Eigen::VectorXd& comp = states[static_cast<std::size_t>(c)];
        for (int r = 0; r < comp.size(); ++r) {
            expected[c * block + 2 * r] += std::sqrt(2.0) * alpha * comp[r] * inv_root2;
            expected[c * block + 2 * r + 1] -= std::sqrt(2.0) * alpha * comp[r] * inv_root2;
        }
    }
    result.structural_residual = (result.velocity - expected).norm();
    if (result.structural_residual > 1e-8)
        throw std::runtime_error("run_instance: clock-expansion identity violated");
    return result;
}

Eigen::MatrixXd clock_chain(int length) {
    if (length < 1) throw std::invalid_argument("clock_chain: need L >= 1");
    Eigen::MatrixXd m = 4.0 * Eigen::MatrixXd::Identity(length + 1, length + 1);
    for (int l = 0; l < length; ++l) {
        m(l, l + 1) = -1.0;
        m(l + 1, l) = -1.0;
    }
    return m;
}

double chain_alpha(int length, double t) {
    if (length < 1) throw std::invalid_argument("chain_alpha: need L >= 1");
    const double denom = length + 2;
    double total = 0.0;
    for (int l = 1; l <= length + 1; ++l) {
        const double s = std::sin(std::numbers::pi * l / denom);
        const double gamma_prime =
            std::sqrt(4.0 - 2.0 * std::cos(std::numbers::pi * l / denom));
        const double sign = (l % 2 == 1) ? 1.0 : -1.0;
        total += sign * s * s * std::cos(gamma_prime * t);
    }
    return 2.0 / denom * total;
}

OverlapReport averaged_overlap(int length, double eps, std::uint64_t) {
    if (length < 1) throw std::invalid_argument("averaged_overlap: need L >= 1");
    if (!(eps > 0.0) || eps >= 0.25)
        throw std::invalid_argument("averaged_overlap: need eps in (0, 1/4)");

    OverlapReport report;
    report.samples_m = static_cast<int>(std::ceil(std::log2(1.0 / eps))) + 1;
    report.t_prime = 10 * static_cast<std::int64_t>(length + 2) * (length + 2);
    report.target = 3.0 / (4.0 * (length + 2));
    report.bound = 2.0 * eps;

    // exact law of a sum of m uniforms over {0..T'}: integer counts with
    // denominator (T'+1)^m
    const std::int64_t width = report.t_prime + 1;
    if (report.samples_m * std::log2(static_cast<double>(width)) > 126.0)
        throw resource_limit_error("averaged_overlap: counts exceed 128-bit range");
    using BigInt = unsigned __int128;
    std::vector<BigInt> counts(static_cast<std::size_t>(width), BigInt{1});
    for (int step = 1; step < report.samples_m; ++step) {
        std::vector<BigInt> next(counts.size() + static_cast<std::size_t>(width) - 1,
                                 BigInt{0});
        // convolve with the all-ones window via a running sum
        BigInt running = 0;
        for (std::size_t s = 0; s < next.size(); ++s) {
            if (s < counts.size()) running += counts[s];
            if (s >= static_cast<std::size_t>(width))
                running -= counts[s - static_cast<std::size_t>(width)];
            next[s] = running;
        }
        counts = std::move(next);
    }
    BigInt total_counts = 0;
    for (BigInt c : counts) total_counts += c;
    BigInt expected_total = 1;
    for (int i = 0; i < report.samples_m; ++i) expected_total *= BigInt(width);
    if (total_counts != expected_total)
        throw std::runtime_error("averaged_overlap: convolution lost mass");

    report.support = static_cast<std::int64_t>(counts.size());
    const double denom = static_cast<double>(expected_total);
    double average = 0.0;
    report.best_alpha_sq = -1.0;
    for (std::size_t s = 0; s < counts.size(); ++s) {
        const double alpha = chain_alpha(length, static_cast<double>(s));
        const double alpha_sq = alpha * alpha;
        average += static_cast<double>(counts[s]) / denom * alpha_sq;
        if (alpha_sq > report.best_alpha_sq) {
            report.best_alpha_sq = alpha_sq;
            report.best_t = static_cast<std::int64_t>(s);
        }
    }
    report.average = average;
    report.deviation = std::abs(average - report.target);
    report.within_bound = report.deviation <= report.bound;
    return report;
}

Decision decide(const BqpInstance& inst, const std::vector<double>& times,
                double yes_threshold, double no_threshold) {
    if (times.empty()) throw std::invalid_argument("decide: need at least one time");
    if (!(no_threshold <= yes_threshold))
        throw std::invalid_argument("decide: thresholds out of order");
    double best = 0.0;
    for (double t : times)
        best = std::max(best, run_instance(inst, t).kinetic_fraction_output);
    if (best >= yes_threshold) return Decision::yes;
    if (best <= no_threshold) return Decision::no;
    return Decision::indeterminate;
}

PerfectChainReport perfect_chain(int length) {
    if (length < 1) throw std::invalid_argument("perfect_chain: need L >= 1");
    const double lplus = length + 1;
    PerfectChainReport report;
    report.b.resize(length + 1);
    for (int l = 0; l <= length; ++l) {
        const double off = l - 0.5 * length;
        report.b[l] = (5.0 * lplus * lplus / 2.0 - 0.25 - 2.0 * off * off) / 4.0;
    }
    const auto coupling = [lplus](double l) {
        return l * (2.0 * lplus - l) * (lplus * lplus - l * l) / 16.0;
    };
    report.u.resize(length);
    for (int l = 1; l <= length; ++l) report.u[l - 1] = coupling(l);

    report.persymmetric = true;
    for (int l = 0; l <= length; ++l)
        if (std::abs(report.b[l] - report.b[length - l]) > 1e-9 * std::abs(report.b[l]))
            report.persymmetric = false;
    for (int l = 1; l <= length; ++l)
        if (std::abs(report.u[l - 1] - report.u[length - l]) >
            1e-9 * std::abs(report.u[l - 1]))
            report.persymmetric = false;

    report.couplings_positive = true;
    for (int l = 1; l <= length; ++l)
        if (!(report.u[l - 1] > 0.0)) report.couplings_positive = false;

    report.inequality_ok = true;
    for (int l = 0; l <= length; ++l) {
        const double below = l >= 1 ? report.u[l - 1] : 0.0;
        const double above = l < length ? report.u[l] : 0.0;
        if (report.b[l] <
            std::sqrt(2.0) * (std::sqrt(below) + std::sqrt(above)))
            report.inequality_ok = false;
    }

    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(length + 1, length + 1);
    for (int l = 0; l <= length; ++l) x(l, l) = report.b[l];
    for (int l = 1; l <= length; ++l) {
        x(l - 1, l) = -std::sqrt(report.u[l - 1]);
        x(l, l - 1) = x(l - 1, l);
    }
    const SymmetricEigen eig = symmetric_eigen(x);
    report.spectrum = eig.values;

    double resid_shifted = 0.0, resid_printed = 0.0;
    for (int k = 0; k <= length; ++k) {
        const double shifted = 0.25 * (length + k + 1.5) * (length + k + 1.5);
        const double printed = 0.25 * (length + k + 0.5) * (length + k + 0.5);
        resid_shifted = std::max(resid_shifted, std::abs(eig.values[k] - shifted));
        resid_printed = std::max(resid_printed, std::abs(eig.values[k] - printed));
    }
    report.spectrum_residual_shifted = resid_shifted;
    report.spectrum_residual_printed = resid_printed;
    report.selected_indexing = resid_shifted <= resid_printed
                                   ? "quarter-square with k + 3/2 offsets"
                                   : "quarter-square with k + 1/2 offsets";

    // endpoint amplitudes over a grid that contains t = 2 pi exactly
    const Eigen::VectorXd gamma = eig.values.cwiseSqrt();
    Eigen::VectorXd products(length + 1);
    for (int k = 0; k <= length; ++k)
        products[k] = eig.vectors(length, k) * eig.vectors(0, k);
    const int steps = 2000;
    for (int i = 0; i <= steps; ++i) {
        const double t = 4.0 * std::numbers::pi * i / steps;
        std::complex<double> exp_amp{0.0, 0.0};
        double cos_amp = 0.0;
        for (int k = 0; k <= length; ++k) {
            exp_amp += products[k] * std::exp(kI * gamma[k] * t);
            cos_amp += products[k] * std::cos(gamma[k] * t);
        }
        if (std::abs(exp_amp) > report.max_exp_transfer) {
            report.max_exp_transfer = std::abs(exp_amp);
            report.exp_transfer_time = t;
        }
        report.max_cos_transfer = std::max(report.max_cos_transfer, std::abs(cos_amp));
    }
    return report;
}

Eigen::MatrixXd encoded_free_matrix(const CircuitSpec& circuit) {
    const int length = circuit.length();
    const int block = 1 << (circuit.qubits + 1);
    const int n = (length + 1) * block;
    Eigen::MatrixXd x = 4.0 * Eigen::MatrixXd::Identity(n, n);
    for (int c = 0; c < length; ++c)
        for (int r = 0; r < block; ++r) {
            x(c * block + r, (c + 1) * block + r) = -1.0;
            x((c + 1) * block + r, c * block + r) = -1.0;
        }
    return x;
}

Eigen::MatrixXd select_unitary(const CircuitSpec& circuit) {
    const int q = circuit.qubits;
    const int length = circuit.length();
    const int block = 1 << (q + 1);
    const int n = (length + 1) * block;
    const std::vector<Eigen::VectorXd> states = prefix_states(circuit);

    // product unitaries V_c = U_c ... U_1 on the computational register
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
    const int comp_dim = 1 << q;
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(comp_dim, comp_dim);
    for (int c = 0; c <= length; ++c) {
        if (c > 0) {
            Eigen::MatrixXd next(comp_dim, comp_dim);
            for (int col = 0; col < comp_dim; ++col) {
                Eigen::VectorXd basis = v.col(col);
                apply_gate(circuit.gates[static_cast<std::size_t>(c - 1)],
                           circuit.qubits, basis);
                next.col(col) = basis;
            }
            v = std::move(next);
        }
        for (int row = 0; row < comp_dim; ++row)
            for (int col = 0; col < comp_dim; ++col)
                for (int anc = 0; anc < 2; ++anc)
                    s(c * block + 2 * row + anc, c * block + 2 * col + anc) =
                        v(row, col);
    }
    return s;
}

Eigen::MatrixXd conjugated_clock_matrix(const CircuitSpec& circuit) {
    const Eigen::MatrixXd s = select_unitary(circuit);
    return s * encoded_free_matrix(circuit) * s.transpose();
}

Eigen::MatrixXd unencoded_clock_matrix(const CircuitSpec& circuit) {
    const int q = circuit.qubits;
    const int length = circuit.length();
    const int block = 1 << (q + 1);
    const int comp_dim = 1 << q;
    const int n = (length + 1) * block;
    Eigen::MatrixXd a = 4.0 * Eigen::MatrixXd::Identity(n, n);
    for (int c = 0; c < length; ++c) {
        // U_{c+1} (x) I_2 as a dense block, signs included
        Eigen::MatrixXd gate(comp_dim, comp_dim);
        for (int col = 0; col < comp_dim; ++col) {
            Eigen::VectorXd basis = Eigen::VectorXd::Zero(comp_dim);
            basis[col] = 1.0;
            apply_gate(circuit.gates[static_cast<std::size_t>(c)], q, basis);
            gate.col(col) = basis;
        }
        for (int row = 0; row < comp_dim; ++row)
            for (int col = 0; col < comp_dim; ++col)
                for (int anc = 0; anc < 2; ++anc) {
                    a(c * block + 2 * row + anc, (c + 1) * block + 2 * col + anc) -=
                        gate(row, col);
                    a((c + 1) * block + 2 * col + anc, c * block + 2 * row + anc) -=
                        gate(row, col);
                }
    }
    return a;
}

} // namespace oscsim::bqp
