#pragma once

#include <Eigen/Dense>

#include "oscsim/encoding.hpp"
#include "oscsim/spectral.hpp"
#include "oscsim/spring_network.hpp"

namespace oscsim {

// Which propagator drives a simulation, plus the knobs only some of them
// read: dt for verlet, the rounding half-width for the phase-estimation
// emulation.
struct EvolutionBackend {
    enum class Kind { verlet, exact_classical, hamiltonian, qpe_emulated };

    Kind kind = Kind::exact_classical;
    double dt = 0.0;        // verlet only; 0 means the network default
    double eps_pe = 1e-3;   // qpe_emulated only
    double delta_pe = 0.0;  // confidence-failure branch is not modeled

    // verlet steps must stay under the stability limit; eps_pe must be
    // positive; delta_pe lives in [0, 1)
    void validate(const SpringNetwork& net) const;
};

// Largest velocity-Verlet step accepted for a network: 0.5 / sqrt(aleph d),
// a factor-4 margin under the 2/omega_max stability edge (||A|| <= aleph d).
// Networks without springs have no constraint.
double verlet_stability_limit(const SpringNetwork& net);

// Default step: two orders of magnitude below the stability limit.
double default_verlet_dt(const SpringNetwork& net);

// Velocity-Verlet integration of M xddot = -F x up to time t; the last step
// is shortened to land exactly on t. This is the brute-force reference the
// other backends are checked against.
ClassicalState evolve_newton(const SpringNetwork& net, const ClassicalState& s0,
                             double t, double dt);

// Closed-form evolution through one symmetric eigendecomposition of A:
// y(t) = cos(sqrt(A) t) y0 + S(t) ydot0 with S(t) the sin propagator,
// where zero modes drift linearly (S(t) -> t on the kernel).
ClassicalState evolve_exact(const SpringNetwork& net, const ClassicalState& s0,
                            double t);
ClassicalState evolve_exact(const SpringNetwork& net, const NormalModes& modes,
                            const ClassicalState& s0, double t);

// exp(-i t H) psi0 for an explicit symmetric H, by eigendecomposition.
EncodedState evolve_hamiltonian(const Eigen::MatrixXd& h,
                                const EncodedState& psi0, double t);

// Same map for the block generator H = -[[0, B], [B^T, 0]] of a network,
// computed from the normal modes of A = B B^T instead of an (N+M)-dimensional
// eigendecomposition. Each positive mode sigma rotates a 2-plane spanned by
// its left/right singular directions; everything orthogonal passes through.
struct EncodedModeBasis {
    Eigen::VectorXd sigma;  // positive singular values of B, ascending
    Eigen::MatrixXd left;   // N x r
    Eigen::MatrixXd right;  // M x r
};

EncodedModeBasis encoded_mode_basis(const SystemMatrices& mats);
EncodedState evolve_encoded(const SystemMatrices& mats, const EncodedState& psi0,
                            double t);
EncodedState evolve_encoded(const EncodedModeBasis& basis,
                            const EncodedState& psi0, double t);

// Exact exp(-i t (-X (x) sqrt(A))) on a 2N generalized-encoding state.
EncodedState evolve_generalized(const Eigen::MatrixXd& a,
                                const EncodedState& psi0, double t);

// Phase-estimation emulation of the same map: each eigenphase
// gamma = +/- lambda_j of -X (x) A is rounded to the grid of spacing
// 2 eps_pe before the signed square root is taken. Only the deterministic
// rounding error is modeled (no confidence-failure branch).
EncodedState qpe_emulate_evolution(const Eigen::MatrixXd& a,
                                   const EncodedState& psi0, double t,
                                   double eps_pe);

// |sign(1+a) sqrt(|1+a|) - 1|; bounded by sqrt(2) min(|a|, sqrt(|a|)).
double signed_sqrt_error(double a);
double signed_sqrt_error_bound(double a);

// Query-count model for the phase-estimation route. Reported estimate with
// unit constants; never asserted against wall-clock anything.
struct QpeCostEstimate {
    double queries = 0.0;
    double eps_pe = 0.0;
    double delta_pe = 0.0;
    double crossover_eps = 0.0; // eps at which the two min() branches meet
};

QpeCostEstimate qpe_cost_model(double a_max_entry, double d, double t,
                               double eps, double norm_a_inv);

} // namespace oscsim
