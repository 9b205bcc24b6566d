#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "oscsim/spring_network.hpp"

namespace oscsim::bqp {

enum class GateKind { hadamard, pauli_x, toffoli };

struct Gate {
    GateKind kind = GateKind::pauli_x;
    int target = 0;      // X: flipped qubit; Toffoli: flipped qubit; H: always q
    int control1 = 0;    // Toffoli only
    int control2 = 0;    // Toffoli only
};

// A circuit over {H, X, Toffoli} on q qubits. Hadamards act on qubit q (the
// last one) and never twice in a row.
struct CircuitSpec {
    int qubits = 0;
    std::vector<Gate> gates;

    int length() const { return static_cast<int>(gates.size()); }
};

void validate_circuit(const CircuitSpec& circuit);

// The clock-register oscillator network of a circuit:
// A = 4 I - sum_l (|l><l+1| + h.c.) (x) W_l on N = (L+1) 2^(q+1) sites,
// where W_l is the gate lifted by one ancilla qubit (Hadamards become the
// nonnegative 4x4 encoded form that acts as H when the ancilla holds |->).
struct BqpInstance {
    CircuitSpec circuit;
    Eigen::SparseMatrix<double> a;  // N x N, symmetric
    SpringNetwork network;          // unit masses, kappa recovered from A
    int output_index = 0;           // oscillator (l = L+1, r = 1)
    Eigen::VectorXd initial_v;      // (+1, -1, 0, ...)

    int dimension() const { return static_cast<int>(a.rows()); }
};

BqpInstance compile_circuit(const CircuitSpec& circuit);

// States of the computational register after each prefix of the circuit:
// entry l is U_l ... U_1 |0...0> (real amplitudes, dimension 2^q).
std::vector<Eigen::VectorXd> prefix_states(const CircuitSpec& circuit);

struct RunResult {
    Eigen::VectorXd velocity;              // xdot(t) = cos(sqrt(A) t) xdot(0)
    double kinetic_fraction_output = 0.0;  // K_out(t) / E with E = 1
    double structural_residual = 0.0;      // distance to the clock-expansion form
};

// Dense evolution of a compiled instance; checks the structural identity
// xdot(t) = sqrt(2) sum_l alpha_l(t) |l> (x) (U_{l-1}..U_1 |0>) (x) |->.
RunResult run_instance(const BqpInstance& inst, double t);

// Endpoint amplitude of the uniform clock chain,
// alpha_{L+1}(t) = <L+1| cos(sqrt(X') t) |1> in closed form.
double chain_alpha(int length, double t);

// The (L+1) x (L+1) clock-chain matrix X' = 4 I - hopping.
Eigen::MatrixXd clock_chain(int length);

struct OverlapReport {
    double average = 0.0;       // sum_t f(t) alpha_{L+1}(t)^2
    double target = 0.0;        // 3 / (4 (L+2))
    double deviation = 0.0;     // |average - target|
    double bound = 0.0;         // 2 eps
    bool within_bound = false;
    int samples_m = 0;          // uniform variables convolved
    std::int64_t t_prime = 0;   // single-variable range {0..T'}
    std::int64_t support = 0;   // m T' + 1 grid points
    std::int64_t best_t = 0;    // integer time with the largest alpha^2
    double best_alpha_sq = 0.0;
};

// Deterministic averaged endpoint probability: f is the exact law of a sum
// of m = ceil(log2(1/eps)) + 1 uniforms on {0..T'}, T' = 10 (L+2)^2, computed
// by integer convolution. The seed parameter is accepted for interface
// stability and ignored.
OverlapReport averaged_overlap(int length, double eps, std::uint64_t seed = 0);

enum class Decision { yes, no, indeterminate };

// Max over the given times of the output kinetic fraction, compared against
// caller-supplied promise thresholds.
Decision decide(const BqpInstance& inst, const std::vector<double>& times,
                double yes_threshold, double no_threshold);

struct PerfectChainReport {
    Eigen::VectorXd b;          // diagonal weights, l = 0..L
    Eigen::VectorXd u;          // squared couplings, l = 1..L
    bool persymmetric = false;
    bool inequality_ok = false; // b_l >= sqrt(2) (sqrt(u_l) + sqrt(u_{l+1}))
    bool couplings_positive = false;
    Eigen::VectorXd spectrum;   // diagonalized, ascending
    double spectrum_residual_shifted = 0.0; // vs (1/4)(L + k + 3/2)^2
    double spectrum_residual_printed = 0.0; // vs (1/4)(L + k + 1/2)^2
    std::string selected_indexing;          // which family matches
    double max_exp_transfer = 0.0;  // max_t |<L+1| e^{i sqrt(X') t} |1>|
    double max_cos_transfer = 0.0;  // max_t |<L+1| cos(sqrt(X') t) |1>|
    double exp_transfer_time = 0.0;
};

// Engineered chain with perfect end-to-end transfer under e^{i sqrt(X') t}:
// 4 b_l = 5 L+^2/2 - 1/4 - 2 (l - L/2)^2, 16 u_l = l (2 L+ - l)(L+^2 - l^2),
// L+ = L + 1. Amplitudes are reported over a grid containing t = 2 pi.
PerfectChainReport perfect_chain(int length);

// A' = S X S^T built from explicit gate products; used to cross-check the
// compiled A on the |-> ancilla subspace.
Eigen::MatrixXd conjugated_clock_matrix(const CircuitSpec& circuit);
Eigen::MatrixXd encoded_free_matrix(const CircuitSpec& circuit); // X (dense)
Eigen::MatrixXd select_unitary(const CircuitSpec& circuit);      // S (dense)
// A with W_l -> U_l (x) I_2 (signs included), built gate by gate.
Eigen::MatrixXd unencoded_clock_matrix(const CircuitSpec& circuit);

} // namespace oscsim::bqp
