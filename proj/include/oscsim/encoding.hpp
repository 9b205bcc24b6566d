#pragma once

#include <complex>

#include <Eigen/Dense>

#include "oscsim/spring_network.hpp"

namespace oscsim {

enum class EncodingKind { primary, generalized, alternative };

// Unit-norm complex amplitude vector carrying the motion of a network. The
// primary kind has dimension N + M: the first N amplitudes are
// sqrt(m_j) xdot_j / sqrt(2E) (real) and the remaining M are the spring
// stretch terms times i. `energy` is the conserved normalizer (the total
// energy E, or the alternative invariant F).
struct EncodedState {
    Eigen::VectorXcd amplitudes;
    double energy = 0.0;
    EncodingKind kind = EncodingKind::primary;

    Eigen::Index dim() const { return amplitudes.size(); }
    double norm() const { return amplitudes.norm(); }
};

// Number of oscillators behind a state of the given kind.
int oscillator_count(const EncodedState& psi);

EncodedState encode_primary(const SpringNetwork& net, const ClassicalState& state);

// Inverse of encode_primary up to the sqrt(2E) scale: the first block comes
// back as sqrt(m_j) xdot_j, the second as the real stretch vector mu.
struct DecodedBlocks {
    Eigen::VectorXd scaled_velocities;
    Eigen::VectorXd mu;
};

DecodedBlocks decode_primary(const SpringNetwork& net, const EncodedState& psi);

// Encoding for a bare second-order system yddot = -A y: amplitudes
// (ydot; i sqrt(A) y) / sqrt(2E), dimension 2N.
EncodedState encode_generalized(const Eigen::MatrixXd& a,
                                const Eigen::VectorXd& y,
                                const Eigen::VectorXd& ydot);

// Alternative encoding (P y; -i B^+ P ydot) / sqrt(2F), where P projects
// onto the row space of A and B^+ is the Moore-Penrose pseudo-inverse.
// F is conserved along trajectories and is stored in `energy`.
EncodedState encode_alternative(const SystemMatrices& mats,
                                const Eigen::VectorXd& y,
                                const Eigen::VectorXd& ydot);

// The (N+M) x (N+M) block generator H = -[[0, B], [B^T, 0]]; symmetric,
// and the top-left N x N block of H^2 equals A.
Eigen::MatrixXd hamiltonian(const SystemMatrices& mats);

} // namespace oscsim
