#include "oscsim/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace oscsim {

bool is_symmetric(const Eigen::MatrixXd& a, double tol) {
    if (a.rows() != a.cols()) return false;
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    return (a - a.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& a) {
    if (!is_symmetric(a))
        throw std::invalid_argument("symmetric_eigen: matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("symmetric_eigen: eigensolver failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

void psd_clip(Eigen::VectorXd& values) {
    if (values.size() == 0) return;
    const double norm = values.cwiseAbs().maxCoeff();
    const double slack = kPsdSlack * norm;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (values[i] < -slack)
            throw std::invalid_argument("psd_clip: matrix is not PSD");
        if (values[i] < 0.0) values[i] = 0.0;
    }
}

NormalModes normal_modes(const Eigen::MatrixXd& a) {
    SymmetricEigen eig = symmetric_eigen(a);
    psd_clip(eig.values);
    NormalModes modes;
    modes.lambda_max = eig.values.size() ? eig.values.maxCoeff() : 0.0;
    modes.omega = eig.values.cwiseSqrt();
    modes.vectors = std::move(eig.vectors);
    return modes;
}

Eigen::MatrixXd sqrt_psd(const Eigen::MatrixXd& a) {
    NormalModes modes = normal_modes(a);
    return modes.vectors * modes.omega.asDiagonal() * modes.vectors.transpose();
}

} // namespace oscsim
