#pragma once

#include <vector>

#include <Eigen/Dense>

#include "oscsim/errors.hpp"

namespace oscsim {

// One spring coupling oscillators j and k (0-based, j <= k). j == k is a
// wall spring attached to oscillator j.
struct Spring {
    int j = 0;
    int k = 0;
    double kappa = 0.0;
};

// A network of point masses coupled by springs. The spring-constant matrix K
// is symmetric with row sparsity (nonzeros per row, diagonal included) at
// most sparsity_d. Immutable after construction; all invariants are checked
// up front.
class SpringNetwork {
public:
    SpringNetwork(int n_masses, std::vector<double> masses,
                  std::vector<Spring> springs, int sparsity_d);

    int size() const { return n_; }
    int sparsity() const { return d_; }
    const std::vector<double>& masses() const { return masses_; }
    const std::vector<Spring>& springs() const { return springs_; }

    double mass(int j) const { return masses_[static_cast<std::size_t>(j)]; }
    double mass_min() const { return m_min_; }
    double mass_max() const { return m_max_; }
    double kappa_max() const { return kappa_max_; }

    // kappa_max / m_min; together with d it bounds ||A|| <= aleph * d.
    double aleph() const { return kappa_max_ / m_min_; }

    // Number of (j, k) pairs with j <= k; the dimension of the spring block.
    std::int64_t edge_count() const {
        return static_cast<std::int64_t>(n_) * (n_ + 1) / 2;
    }

    // Lexicographic position of the pair (j, k), j <= k, within all pairs.
    std::int64_t edge_index(int j, int k) const;

    // Diagonal spring constant kappa_jj (0 if absent); one oracle query.
    double wall_spring(int j) const;

private:
    int n_ = 0;
    int d_ = 1;
    std::vector<double> masses_;
    std::vector<Spring> springs_; // sorted by (j, k), no duplicates
    double m_min_ = 0.0, m_max_ = 0.0, kappa_max_ = 0.0;
};

// Displacements and velocities of every oscillator at time t.
struct ClassicalState {
    Eigen::VectorXd x;
    Eigen::VectorXd v;
    double t = 0.0;
};

// Derived operators of a network. F is the weighted graph Laplacian of the
// springs (plus wall terms on the diagonal), A = M^{-1/2} F M^{-1/2}, and B
// is the N x M incidence factor with B B^T = A, one column per (j, k) pair
// in edge_index order.
struct SystemMatrices {
    Eigen::VectorXd m_sqrt;
    Eigen::MatrixXd F;
    Eigen::MatrixXd A;
    Eigen::MatrixXd B;

    int size() const { return static_cast<int>(F.rows()); }
};

// Dense-solver ceiling: B and H = -[[0,B],[B^T,0]] are materialized densely,
// so N + M must stay small.
inline constexpr std::int64_t kDenseDimensionCap = 8192;

SystemMatrices build_matrices(const SpringNetwork& net);

// F and A only; no size restriction beyond N x N storage.
Eigen::MatrixXd system_operator(const SpringNetwork& net);

struct EnergyBreakdown {
    double kinetic = 0.0;
    double potential = 0.0;
    double total = 0.0;
};

EnergyBreakdown energy(const SpringNetwork& net, const ClassicalState& state);

} // namespace oscsim
