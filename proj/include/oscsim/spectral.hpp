#pragma once

#include <Eigen/Dense>

namespace oscsim {

// Relative threshold below which singular values are treated as zero when
// forming projectors and pseudo-inverses.
inline constexpr double kRankTol = 1e-10;

// Eigenvalues of nominally PSD matrices may round slightly negative; values
// within this relative band are clipped to zero, anything lower is rejected.
inline constexpr double kPsdSlack = 1e-9;

bool is_symmetric(const Eigen::MatrixXd& a, double tol = 1e-12);

// Eigendecomposition of a symmetric matrix, eigenvalues ascending.
struct SymmetricEigen {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors; // column i pairs with values[i]
};

SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& a);

// Clip small negative eigenvalues of a PSD matrix to zero (in place).
// Throws std::invalid_argument when an eigenvalue is more negative than the
// slack band allows.
void psd_clip(Eigen::VectorXd& values);

// Normal-mode frequencies and shapes of A: omega[i] = sqrt(lambda_i) after
// PSD clipping, ascending.
struct NormalModes {
    Eigen::VectorXd omega;
    Eigen::MatrixXd vectors;
    double lambda_max = 0.0;
};

NormalModes normal_modes(const Eigen::MatrixXd& a);

// Principal square root of a symmetric PSD matrix.
Eigen::MatrixXd sqrt_psd(const Eigen::MatrixXd& a);

} // namespace oscsim
