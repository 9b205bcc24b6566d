#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "oscsim/encoding.hpp"
#include "oscsim/spring_network.hpp"

namespace oscsim::blockenc {

// Bit budgets of the quantized access model: r comparison bits for the
// amplitude grid, r_m mass bits, r_kappa spring bits.
struct QuantizationConfig {
    int r = 8;
    int r_m = 8;
    int r_kappa = 8;
};

// Round-down binary fraction of value relative to max_value, in [0, 2^bits];
// value == max_value saturates to 2^bits so the top of the range is exact.
std::uint64_t quantize(double value, double max_value, int bits);

// A unitary whose fixed-ancilla sub-block approximates target / lambda. The
// sub-block is always materialized; the full unitary is available separately
// for small sizes.
struct BlockEncoding {
    Eigen::SparseMatrix<double> block; // extracted <0|U|0> sub-block
    double lambda = 0.0;               // sqrt(2 aleph d), d padded to a power of two
    double predicted_error = 0.0;      // epsilon' bound from the bit budgets
    double achieved_error = 0.0;       // measured ||block - target / lambda||
    QuantizationConfig config;
    int padded_n = 0;                  // mass count after power-of-two padding
    int padded_d = 0;                  // superposition width (power of two)
    std::vector<int> ancilla_dims;
};

// Network padded with decoupled unit masses up to the next power of two.
SpringNetwork pad_to_power_of_two(const SpringNetwork& net);

// Exact padded incidence factor: N x N^2, column j*N + k for the pair
// (j, k), j <= k; columns with j > k are zero.
Eigen::SparseMatrix<double> padded_incidence(const SpringNetwork& padded);

// Quantized block encoding of B: amplitudes are produced by counting grid
// points that pass the inequality test against the quantized kappa and mass
// words, divided by the superposition and sign-branch factors.
BlockEncoding block_encode_B(const SpringNetwork& net, const QuantizationConfig& cfg);

// The 2N^2 x 2N^2 anti-block form -[[0, B~],[B~^T, 0]] assembled from a B
// encoding; inherits lambda, and the error never grows.
BlockEncoding block_encode_H(const SpringNetwork& net, const BlockEncoding& be_b);

// Explicit unitaries on system (x) ancilla registers, composed factor by
// factor (superposition reflection, neighbor permutation, comparison grid,
// swap branch, sign gate; plus the conditional-reflection projector for H).
// Real orthogonal matrices; sizes are capped.
Eigen::SparseMatrix<double> materialize_unitary_B(const SpringNetwork& net,
                                                  const QuantizationConfig& cfg);
Eigen::SparseMatrix<double> materialize_unitary_H(const SpringNetwork& net,
                                                  const QuantizationConfig& cfg);

// <0_anc| U |0_anc> slices matching the layouts produced above.
Eigen::SparseMatrix<double> extract_block_B(const Eigen::SparseMatrix<double>& u,
                                            int padded_n, const QuantizationConfig& cfg);
Eigen::SparseMatrix<double> extract_block_H(const Eigen::SparseMatrix<double>& u,
                                            int padded_n, const QuantizationConfig& cfg);

// Largest singular value of a sparse rectangular matrix via its Gram matrix.
double spectral_norm(const Eigen::SparseMatrix<double>& m);

struct SimulationCost {
    double tau = 0.0;       // t sqrt(aleph d)
    double queries = 0.0;   // tau + log2(1/eps)
    double gates = 0.0;     // queries x polylog factor
    double eps_prime = 0.0; // per-call block-encoding error budget
};

// Reported estimate with unit constants.
SimulationCost simulation_cost_model(const SpringNetwork& net, double t, double eps);

struct InitialStatePrep {
    EncodedState psi0;
    double success_amplitude = 0.0; // sqrt(2E / (m_max a^2 + 2 kappa_max d b^2))
    double rounds_estimate = 0.0;   // ceil(1 / success_amplitude)
};

InitialStatePrep prepare_initial_state(const SpringNetwork& net,
                                       const Eigen::VectorXd& x0,
                                       const Eigen::VectorXd& v0);

} // namespace oscsim::blockenc
