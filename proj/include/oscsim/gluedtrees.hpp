#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oscsim/spring_network.hpp"

namespace oscsim::gluedtrees {

// Two depth-n binary trees joined leaf-to-leaf by a random alternating cycle,
// with unit masses, unit springs, and a wall spring at each root. Vertices
// are stored column by column: column 1 holds ENTRANCE (id 0), column 2n
// holds EXIT (id N-1). Labels are random injective 2n-bit strings.
struct GluedTreesInstance {
    int depth_n = 0;
    SpringNetwork network;
    std::vector<std::uint64_t> labels;
    int entrance_id = 0;
    int exit_id = 0;
    std::vector<int> column_offsets; // column l (1-based) spans
                                     // [column_offsets[l-1], column_offsets[l])

    int column_size(int l) const {
        return column_offsets[static_cast<std::size_t>(l)] -
               column_offsets[static_cast<std::size_t>(l - 1)];
    }
};

GluedTreesInstance generate(int n, std::uint64_t seed);

// The 2n-dimensional column reduction: tridiagonal, diagonal 3, off-diagonal
// -sqrt(2) except -2 at the centre bond.
struct ReducedChain {
    int n = 0;
    Eigen::MatrixXd matrix;
};

ReducedChain reduce_to_chain(int n);

// Column coordinates z_l = sum_{j in column l} x_j / sqrt(N_l) of a full
// configuration; maps full trajectories onto the chain.
Eigen::VectorXd project_to_columns(const GluedTreesInstance& inst,
                                   const Eigen::VectorXd& values);

// Mode data of the chain: frequencies gamma_l = sqrt(eig(matrix)) ascending
// and endpoint products c_l = <2n|g_l><g_l|1>, so that
// zdot_{2n}(t) = sum_l c_l cos(gamma_l t) for the unit-velocity start.
struct ChainModes {
    Eigen::VectorXd gamma;
    Eigen::VectorXd endpoint; // c_l
    Eigen::VectorXd entrance_overlap_sq; // <g_l|1>^2
    Eigen::VectorXd eigenvalues;         // of the chain matrix, ascending
};

ChainModes chain_modes(const ReducedChain& chain);

double exit_velocity(const ChainModes& modes, double t);

// Time-averaged exit kinetic energy (1/T) int_0^T zdot_{2n}^2 dt, with the
// cos x cos integrals done in closed form.
double p_exit(const ReducedChain& chain, double T);

// T -> infinity limit, via the limit of the closed form and via the
// (1/2) sum_l <g_l|1>^4 overlap formula; the two agree to roundoff.
double p_exit_infinity(const ReducedChain& chain);
double p_exit_infinity_overlap(const ReducedChain& chain);

struct SpectralReport {
    std::vector<double> gaps;   // adjacent gaps of the gamma spectrum
    double min_gap = 0.0;       // Delta
    double chain_gap = 0.0;     // Delta' (gap of the chain matrix spectrum)
    double lambda1_overlap = 0.0; // |<1|g_min>| for the lowest mode
    double v1_residual = 0.0;     // ||matrix * v1|| for the closed-form trial vector
    double smallest_eigenvalue = 0.0;
};

SpectralReport spectral_report(const ReducedChain& chain);

// Grid step used when scanning |zdot_{2n}(t)|^2: at least 40 samples per
// period of the fastest mode (gamma <= sqrt(6)).
double scan_time_step();

// First grid time t <= 10 n^4 with |zdot_{2n}(t)|^2 >= threshold.
std::optional<double> find_exit_time(const ReducedChain& chain, double threshold);

struct SolveResult {
    bool success = false;
    std::uint64_t exit_label = 0;
    double evolution_time = 0.0;
    std::int64_t quantum_query_count = 0; // oracle-call model over all shots
    int shots = 0;                        // encoded-state preparations consumed
    int verification_queries = 0;         // direct kappa_jj lookups
};

// End-to-end protocol: pick the time on the reduced chain, prepare and
// Born-sample the evolved encoded state, verify root candidates through the
// diagonal-spring oracle, and return the EXIT label.
SolveResult solve_instance(const GluedTreesInstance& inst, std::uint64_t rng_seed);

} // namespace oscsim::gluedtrees
