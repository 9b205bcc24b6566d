#include "oscsim/encoding.hpp"

#include <cmath>

#include "oscsim/spectral.hpp"

namespace oscsim {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

int oscillator_count(const EncodedState& psi) {
    const std::int64_t dim = psi.dim();
    if (psi.kind == EncodingKind::generalized) {
        if (dim % 2 != 0)
            throw std::invalid_argument("oscillator_count: odd generalized dimension");
        return static_cast<int>(dim / 2);
    }
    // dim = n + n(n+1)/2  =>  n = (-3 + sqrt(9 + 8 dim)) / 2
    const auto n = static_cast<std::int64_t>(
        std::llround((-3.0 + std::sqrt(9.0 + 8.0 * static_cast<double>(dim))) / 2.0));
    if (n < 1 || n + n * (n + 1) / 2 != dim)
        throw std::invalid_argument("oscillator_count: dimension is not N + N(N+1)/2");
    return static_cast<int>(n);
}

EncodedState encode_primary(const SpringNetwork& net, const ClassicalState& state) {
    const int n = net.size();
    if (state.x.size() != n || state.v.size() != n)
        throw std::invalid_argument("encode_primary: state dimension mismatch");
    const EnergyBreakdown e = energy(net, state);
    if (!(e.total > 0.0))
        throw degenerate_state_error("encode_primary: zero-energy state");

    EncodedState psi;
    psi.kind = EncodingKind::primary;
    psi.energy = e.total;
    psi.amplitudes = Eigen::VectorXcd::Zero(n + net.edge_count());
    const double scale = 1.0 / std::sqrt(2.0 * e.total);
    for (int j = 0; j < n; ++j)
        psi.amplitudes[j] = scale * std::sqrt(net.mass(j)) * state.v[j];
    for (const Spring& s : net.springs()) {
        const double stretch =
            s.j == s.k ? state.x[s.j] : state.x[s.j] - state.x[s.k];
        psi.amplitudes[n + net.edge_index(s.j, s.k)] =
            kI * scale * std::sqrt(s.kappa) * stretch;
    }
    return psi;
}

DecodedBlocks decode_primary(const SpringNetwork& net, const EncodedState& psi) {
    if (psi.kind != EncodingKind::primary)
        throw std::invalid_argument("decode_primary: state is not primary-encoded");
    const int n = net.size();
    if (psi.dim() != n + net.edge_count())
        throw std::invalid_argument("decode_primary: dimension mismatch");
    const double scale = std::sqrt(2.0 * psi.energy);
    DecodedBlocks out;
    out.scaled_velocities = scale * psi.amplitudes.head(n).real();
    out.mu = scale * psi.amplitudes.tail(psi.dim() - n).imag();
    return out;
}

EncodedState encode_generalized(const Eigen::MatrixXd& a,
                                const Eigen::VectorXd& y,
                                const Eigen::VectorXd& ydot) {
    if (!is_symmetric(a))
        throw std::invalid_argument("encode_generalized: A must be symmetric");
    const Eigen::Index n = a.rows();
    if (y.size() != n || ydot.size() != n)
        throw std::invalid_argument("encode_generalized: dimension mismatch");
    const Eigen::VectorXd mu = sqrt_psd(a) * y;
    const double total = 0.5 * (ydot.squaredNorm() + mu.squaredNorm());
    if (!(total > 0.0))
        throw degenerate_state_error("encode_generalized: zero-energy state");

    EncodedState psi;
    psi.kind = EncodingKind::generalized;
    psi.energy = total;
    psi.amplitudes.resize(2 * n);
    const double scale = 1.0 / std::sqrt(2.0 * total);
    psi.amplitudes.head(n) = (scale * ydot).cast<std::complex<double>>();
    psi.amplitudes.tail(n) = kI * (scale * mu).cast<std::complex<double>>();
    return psi;
}

EncodedState encode_alternative(const SystemMatrices& mats,
                                const Eigen::VectorXd& y,
                                const Eigen::VectorXd& ydot) {
    const Eigen::Index n = mats.A.rows();
    if (y.size() != n || ydot.size() != n)
        throw std::invalid_argument("encode_alternative: dimension mismatch");

    SymmetricEigen eig = symmetric_eigen(mats.A);
    psd_clip(eig.values);
    const double cutoff = kRankTol * (eig.values.size() ? eig.values.maxCoeff() : 0.0);

    // Work mode by mode in the row space of A.
    Eigen::VectorXd py = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd pinv_v = Eigen::VectorXd::Zero(mats.B.cols());
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
        if (eig.values[k] <= cutoff) continue;
        const Eigen::VectorXd u = eig.vectors.col(k);
        py += u.dot(y) * u;
        // B^+ = sum_k (B^T u_k) u_k^T / lambda_k over retained modes
        pinv_v += (u.dot(ydot) / eig.values[k]) * (mats.B.transpose() * u);
    }

    const double invariant = 0.5 * (py.squaredNorm() + pinv_v.squaredNorm());
    if (!(invariant > 0.0))
        throw degenerate_state_error(
            "encode_alternative: state is annihilated by the row-space projector");

    EncodedState psi;
    psi.kind = EncodingKind::alternative;
    psi.energy = invariant;
    psi.amplitudes.resize(n + mats.B.cols());
    const double scale = 1.0 / std::sqrt(2.0 * invariant);
    psi.amplitudes.head(n) = (scale * py).cast<std::complex<double>>();
    psi.amplitudes.tail(mats.B.cols()) =
        -kI * (scale * pinv_v).cast<std::complex<double>>();
    return psi;
}

Eigen::MatrixXd hamiltonian(const SystemMatrices& mats) {
    const Eigen::Index n = mats.B.rows();
    const Eigen::Index m = mats.B.cols();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n + m, n + m);
    h.topRightCorner(n, m) = -mats.B;
    h.bottomLeftCorner(m, n) = -mats.B.transpose();
    return h;
}

} // namespace oscsim
