#include "oscsim/spring_network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oscsim {

SpringNetwork::SpringNetwork(int n_masses, std::vector<double> masses,
                             std::vector<Spring> springs, int sparsity_d)
    : n_(n_masses), d_(sparsity_d), masses_(std::move(masses)),
      springs_(std::move(springs)) {
    if (n_ <= 0) throw std::invalid_argument("SpringNetwork: need n >= 1");
    if (d_ <= 0) throw std::invalid_argument("SpringNetwork: need d >= 1");
    if (static_cast<int>(masses_.size()) != n_)
        throw std::invalid_argument("SpringNetwork: mass count != n");
    for (double m : masses_) {
        if (!(m > 0.0) || !std::isfinite(m))
            throw std::invalid_argument("SpringNetwork: masses must be positive");
    }
    std::sort(springs_.begin(), springs_.end(), [](const Spring& a, const Spring& b) {
        return a.j != b.j ? a.j < b.j : a.k < b.k;
    });
    std::vector<int> row_nnz(static_cast<std::size_t>(n_), 0);
    for (std::size_t i = 0; i < springs_.size(); ++i) {
        const Spring& s = springs_[i];
        if (s.j < 0 || s.k < s.j || s.k >= n_)
            throw std::invalid_argument("SpringNetwork: spring index out of range");
        if (!(s.kappa >= 0.0) || !std::isfinite(s.kappa))
            throw std::invalid_argument("SpringNetwork: spring constants must be >= 0");
        if (i > 0 && springs_[i - 1].j == s.j && springs_[i - 1].k == s.k)
            throw std::invalid_argument("SpringNetwork: duplicate spring entry");
        if (s.kappa > 0.0) {
            row_nnz[static_cast<std::size_t>(s.j)]++;
            if (s.k != s.j) row_nnz[static_cast<std::size_t>(s.k)]++;
        }
    }
    for (int nnz : row_nnz) {
        if (nnz > d_)
            throw std::invalid_argument("SpringNetwork: row sparsity exceeds d");
    }

    m_min_ = *std::min_element(masses_.begin(), masses_.end());
    m_max_ = *std::max_element(masses_.begin(), masses_.end());
    kappa_max_ = 0.0;
    for (const Spring& s : springs_) kappa_max_ = std::max(kappa_max_, s.kappa);
}

std::int64_t SpringNetwork::edge_index(int j, int k) const {
    if (j < 0 || k < j || k >= n_)
        throw std::invalid_argument("edge_index: need 0 <= j <= k < n");
    const std::int64_t jj = j;
    return jj * n_ - jj * (jj - 1) / 2 + (k - j);
}

double SpringNetwork::wall_spring(int j) const {
    for (const Spring& s : springs_) {
        if (s.j == j && s.k == j) return s.kappa;
    }
    return 0.0;
}

SystemMatrices build_matrices(const SpringNetwork& net) {
    const int n = net.size();
    const std::int64_t m = net.edge_count();
    if (n + m > kDenseDimensionCap)
        throw resource_limit_error("build_matrices: N + M exceeds dense ceiling");

    SystemMatrices out;
    out.m_sqrt.resize(n);
    for (int j = 0; j < n; ++j) out.m_sqrt[j] = std::sqrt(net.mass(j));

    out.F = Eigen::MatrixXd::Zero(n, n);
    out.B = Eigen::MatrixXd::Zero(n, m);
    for (const Spring& s : net.springs()) {
        const double root = std::sqrt(s.kappa);
        const std::int64_t col = net.edge_index(s.j, s.k);
        if (s.j == s.k) {
            out.F(s.j, s.j) += s.kappa;
            out.B(s.j, col) = root / out.m_sqrt[s.j];
        } else {
            out.F(s.j, s.j) += s.kappa;
            out.F(s.k, s.k) += s.kappa;
            out.F(s.j, s.k) -= s.kappa;
            out.F(s.k, s.j) -= s.kappa;
            out.B(s.j, col) = root / out.m_sqrt[s.j];
            out.B(s.k, col) = -root / out.m_sqrt[s.k];
        }
    }

    out.A = out.F;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            out.A(r, c) /= out.m_sqrt[r] * out.m_sqrt[c];
    // enforce exact symmetry against rounding in the scaling above
    out.A = 0.5 * (out.A + out.A.transpose()).eval();
    return out;
}

Eigen::MatrixXd system_operator(const SpringNetwork& net) {
    const int n = net.size();
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n, n);
    for (const Spring& s : net.springs()) {
        if (s.j == s.k) {
            f(s.j, s.j) += s.kappa;
        } else {
            f(s.j, s.j) += s.kappa;
            f(s.k, s.k) += s.kappa;
            f(s.j, s.k) -= s.kappa;
            f(s.k, s.j) -= s.kappa;
        }
    }
    for (int j = 0; j < n; ++j) {
        const double mj = std::sqrt(net.mass(j));
        for (int k = 0; k < n; ++k) f(j, k) /= mj * std::sqrt(net.mass(k));
    }
    return 0.5 * (f + f.transpose().eval());
}

EnergyBreakdown energy(const SpringNetwork& net, const ClassicalState& state) {
    const int n = net.size();
    if (state.x.size() != n || state.v.size() != n)
        throw std::invalid_argument("energy: state dimension mismatch");
    EnergyBreakdown e;
    for (int j = 0; j < n; ++j)
        e.kinetic += 0.5 * net.mass(j) * state.v[j] * state.v[j];
    for (const Spring& s : net.springs()) {
        const double stretch =
            s.j == s.k ? state.x[s.j] : state.x[s.j] - state.x[s.k];
        e.potential += 0.5 * s.kappa * stretch * stretch;
    }
    e.total = e.kinetic + e.potential;
    return e;
}

} // namespace oscsim
