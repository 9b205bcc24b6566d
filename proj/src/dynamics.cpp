#include "oscsim/dynamics.hpp"

#include <cmath>
#include <limits>

namespace oscsim {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

} // namespace

double verlet_stability_limit(const SpringNetwork& net) {
    const double rate = net.aleph() * net.sparsity();
    if (rate <= 0.0) return std::numeric_limits<double>::infinity();
    return 0.5 / std::sqrt(rate);
}

void EvolutionBackend::validate(const SpringNetwork& net) const {
    if (kind == Kind::verlet && dt > verlet_stability_limit(net))
        throw std::invalid_argument("EvolutionBackend: dt exceeds the stability limit");
    if (kind == Kind::verlet && dt < 0.0)
        throw std::invalid_argument("EvolutionBackend: dt must be nonnegative");
    if (kind == Kind::qpe_emulated && !(eps_pe > 0.0))
        throw std::invalid_argument("EvolutionBackend: eps_pe must be positive");
    if (delta_pe < 0.0 || delta_pe >= 1.0)
        throw std::invalid_argument("EvolutionBackend: delta_pe must be in [0, 1)");
}

double default_verlet_dt(const SpringNetwork& net) {
    const double limit = verlet_stability_limit(net);
    return std::isfinite(limit) ? 0.02 * limit : 0.01;
}

ClassicalState evolve_newton(const SpringNetwork& net, const ClassicalState& s0,
                             double t, double dt) {
    if (!(t >= 0.0)) throw std::invalid_argument("evolve_newton: need t >= 0");
    if (!(dt > 0.0)) throw std::invalid_argument("evolve_newton: need dt > 0");
    if (dt > verlet_stability_limit(net))
        throw std::invalid_argument("evolve_newton: dt exceeds the stability limit");
    const int n = net.size();
    if (s0.x.size() != n || s0.v.size() != n)
        throw std::invalid_argument("evolve_newton: state dimension mismatch");

    // acceleration a = -M^{-1} F x, evaluated spring by spring
    const auto accel = [&](const Eigen::VectorXd& x) {
        Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
        for (const Spring& s : net.springs()) {
            if (s.j == s.k) {
                f[s.j] -= s.kappa * x[s.j];
            } else {
                const double pull = s.kappa * (x[s.k] - x[s.j]);
                f[s.j] += pull;
                f[s.k] -= pull;
            }
        }
        for (int j = 0; j < n; ++j) f[j] /= net.mass(j);
        return f;
    };

    Eigen::VectorXd x = s0.x;
    Eigen::VectorXd v = s0.v;
    Eigen::VectorXd a = accel(x);
    double remaining = t;
    while (remaining > 0.0) {
        const double h = std::min(dt, remaining);
        x += h * v + 0.5 * h * h * a;
        const Eigen::VectorXd a_next = accel(x);
        v += 0.5 * h * (a + a_next);
        a = a_next;
        remaining -= h;
    }
    return {std::move(x), std::move(v), s0.t + t};
}

ClassicalState evolve_exact(const SpringNetwork& net, const ClassicalState& s0,
                            double t) {
    return evolve_exact(net, normal_modes(system_operator(net)), s0, t);
}

ClassicalState evolve_exact(const SpringNetwork& net, const NormalModes& modes,
                            const ClassicalState& s0, double t) {
    const int n = net.size();
    if (s0.x.size() != n || s0.v.size() != n)
        throw std::invalid_argument("evolve_exact: state dimension mismatch");
    if (t == 0.0) return s0;

    Eigen::VectorXd y0(n), yd0(n);
    for (int j = 0; j < n; ++j) {
        const double root = std::sqrt(net.mass(j));
        y0[j] = root * s0.x[j];
        yd0[j] = root * s0.v[j];
    }
    const Eigen::VectorXd cy = modes.vectors.transpose() * y0;
    const Eigen::VectorXd cv = modes.vectors.transpose() * yd0;

    Eigen::VectorXd my(n), mv(n);
    for (int k = 0; k < n; ++k) {
        const double w = modes.omega[k];
        const double c = std::cos(w * t);
        const double s = t * sinc(w * t); // -> t on the kernel
        my[k] = c * cy[k] + s * cv[k];
        mv[k] = -w * std::sin(w * t) * cy[k] + c * cv[k];
    }
    Eigen::VectorXd y = modes.vectors * my;
    Eigen::VectorXd yd = modes.vectors * mv;
    for (int j = 0; j < n; ++j) {
        const double root = std::sqrt(net.mass(j));
        y[j] /= root;
        yd[j] /= root;
    }
    return {std::move(y), std::move(yd), s0.t + t};
}

EncodedState evolve_hamiltonian(const Eigen::MatrixXd& h,
                                const EncodedState& psi0, double t) {
    if (!is_symmetric(h))
        throw std::invalid_argument("evolve_hamiltonian: H must be symmetric");
    if (psi0.dim() != h.rows())
        throw std::invalid_argument("evolve_hamiltonian: dimension mismatch");
    if (t == 0.0) return psi0;
    const SymmetricEigen eig = symmetric_eigen(h);
    Eigen::VectorXcd coeff = eig.vectors.transpose() * psi0.amplitudes;
    for (Eigen::Index k = 0; k < coeff.size(); ++k)
        coeff[k] *= std::exp(-kI * t * eig.values[k]);
    EncodedState out = psi0;
    out.amplitudes = eig.vectors * coeff;
    return out;
}

EncodedModeBasis encoded_mode_basis(const SystemMatrices& mats) {
    const SymmetricEigen eig = symmetric_eigen(mats.A);
    Eigen::VectorXd values = eig.values;
    psd_clip(values);
    const double lambda_max = values.size() ? values.maxCoeff() : 0.0;
    const double cutoff = kRankTol * kRankTol * lambda_max;

    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < values.size(); ++k)
        if (values[k] > cutoff) ++rank;

    EncodedModeBasis basis;
    basis.sigma.resize(rank);
    basis.left.resize(mats.B.rows(), rank);
    basis.right.resize(mats.B.cols(), rank);
    Eigen::Index pos = 0;
    for (Eigen::Index k = 0; k < values.size(); ++k) {
        if (values[k] <= cutoff) continue;
        const double sigma = std::sqrt(values[k]);
        basis.sigma[pos] = sigma;
        basis.left.col(pos) = eig.vectors.col(k);
        basis.right.col(pos) = mats.B.transpose() * eig.vectors.col(k) / sigma;
        ++pos;
    }
    return basis;
}

EncodedState evolve_encoded(const SystemMatrices& mats, const EncodedState& psi0,
                            double t) {
    return evolve_encoded(encoded_mode_basis(mats), psi0, t);
}

EncodedState evolve_encoded(const EncodedModeBasis& basis,
                            const EncodedState& psi0, double t) {
    const Eigen::Index n = basis.left.rows();
    const Eigen::Index m = basis.right.rows();
    if (psi0.dim() != n + m)
        throw std::invalid_argument("evolve_encoded: dimension mismatch");
    if (t == 0.0) return psi0;

    const Eigen::VectorXcd top = psi0.amplitudes.head(n);
    const Eigen::VectorXcd bottom = psi0.amplitudes.tail(m);
    const Eigen::VectorXcd a = basis.left.transpose() * top;
    const Eigen::VectorXcd b = basis.right.transpose() * bottom;

    // exp(-itH) = exp(itK) with K = [[0,B],[B^T,0]]; on the 2-plane of mode
    // sigma it is [[cos, i sin],[i sin, cos]](t sigma).
    Eigen::VectorXcd a_out(a.size()), b_out(b.size());
    for (Eigen::Index k = 0; k < basis.sigma.size(); ++k) {
        const double c = std::cos(basis.sigma[k] * t);
        const std::complex<double> is = kI * std::sin(basis.sigma[k] * t);
        a_out[k] = c * a[k] + is * b[k];
        b_out[k] = is * a[k] + c * b[k];
    }

    EncodedState out = psi0;
    out.amplitudes.head(n) = top - basis.left * a + basis.left * a_out;
    out.amplitudes.tail(m) = bottom - basis.right * b + basis.right * b_out;
    return out;
}

namespace {

// Shared skeleton of the exact and phase-estimation-emulated propagators for
// -X (x) sqrt(A): both apply per-eigenpair phases in the (|->, |+>) x modes
// basis; they differ only in the phase rule.
template <typename PhaseRule>
EncodedState spectral_propagate(const Eigen::MatrixXd& a,
                                const EncodedState& psi0, PhaseRule&& phase) {
    const Eigen::Index n = a.rows();
    if (psi0.dim() != 2 * n)
        throw std::invalid_argument("spectral_propagate: state must have dimension 2N");
    SymmetricEigen eig = symmetric_eigen(a);
    psd_clip(eig.values);

    const Eigen::VectorXcd top = psi0.amplitudes.head(n);
    const Eigen::VectorXcd bottom = psi0.amplitudes.tail(n);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    // |-> component and |+> component of each A-mode
    Eigen::VectorXcd minus = inv_sqrt2 * (eig.vectors.transpose() * (top - bottom));
    Eigen::VectorXcd plus = inv_sqrt2 * (eig.vectors.transpose() * (top + bottom));
    for (Eigen::Index k = 0; k < n; ++k) {
        minus[k] *= phase(eig.values[k]);   // gamma = +lambda_k
        plus[k] *= phase(-eig.values[k]);   // gamma = -lambda_k
    }
    EncodedState out = psi0;
    out.amplitudes.head(n) =
        inv_sqrt2 * (eig.vectors * (minus + plus).eval());
    out.amplitudes.tail(n) =
        inv_sqrt2 * (eig.vectors * (plus - minus).eval());
    return out;
}

} // namespace

EncodedState evolve_generalized(const Eigen::MatrixXd& a,
                                const EncodedState& psi0, double t) {
    return spectral_propagate(a, psi0, [t](double gamma) {
        const double root = gamma >= 0.0 ? std::sqrt(gamma) : -std::sqrt(-gamma);
        return std::exp(-kI * t * root);
    });
}

EncodedState qpe_emulate_evolution(const Eigen::MatrixXd& a,
                                   const EncodedState& psi0, double t,
                                   double eps_pe) {
    if (!(eps_pe > 0.0))
        throw std::invalid_argument("qpe_emulate_evolution: need eps_pe > 0");
    return spectral_propagate(a, psi0, [t, eps_pe](double gamma) {
        const double grid = 2.0 * eps_pe;
        const double x = grid * std::round(gamma / grid);
        const double root = x >= 0.0 ? std::sqrt(x) : -std::sqrt(-x);
        return std::exp(-kI * t * root);
    });
}

double signed_sqrt_error(double a) {
    const double arg = 1.0 + a;
    const double value =
        arg >= 0.0 ? std::sqrt(arg) : -std::sqrt(-arg);
    return std::abs(value - 1.0);
}

double signed_sqrt_error_bound(double a) {
    const double mag = std::abs(a);
    return std::sqrt(2.0) * std::min(mag, std::sqrt(mag));
}

QpeCostEstimate qpe_cost_model(double a_max_entry, double d, double t,
                               double eps, double norm_a_inv) {
    if (!(a_max_entry > 0.0) || !(d > 0.0) || !(t >= 0.0) || !(eps > 0.0) ||
        eps >= 1.0 || !(norm_a_inv > 0.0))
        throw std::invalid_argument("qpe_cost_model: inputs out of range");
    QpeCostEstimate out;
    const double linear = t * std::sqrt(norm_a_inv) / eps;
    const double quadratic = t * t / (eps * eps);
    out.queries = a_max_entry * d * std::log2(1.0 / eps) * std::min(linear, quadratic);
    out.eps_pe = std::max(eps / (2.0 * std::sqrt(2.0) * t * std::sqrt(norm_a_inv)),
                          eps * eps / (8.0 * t * t));
    out.delta_pe = eps * eps / 64.0;
    out.crossover_eps = t / std::sqrt(norm_a_inv);
    return out;
}

} // namespace oscsim
