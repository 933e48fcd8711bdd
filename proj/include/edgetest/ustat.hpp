#pragma once

#include "edgetest/sample_matrix.hpp"

#include <Eigen/Dense>

namespace edgetest {

/// Relative floor below which the covariance estimate is treated as singular:
/// the smallest eigenvalue must exceed kSingularityFloor * largest eigenvalue.
inline constexpr double kSingularityFloor = 1e-10;

/// Unbiased covariance estimate together with its eigendecomposition.
/// Eigenvalues are sorted descending; column k of `eigenvectors` pairs with
/// `eigenvalues(k)`.
struct CovarianceEstimate {
    Eigen::MatrixXd sigma;
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;

    [[nodiscard]] Index dim() const noexcept { return static_cast<Index>(sigma.rows()); }
    [[nodiscard]] double smallest_eigenvalue() const { return eigenvalues(eigenvalues.size() - 1); }
    [[nodiscard]] double largest_eigenvalue() const { return eigenvalues(0); }
};

struct PrecisionEstimate {
    Eigen::MatrixXd theta;

    [[nodiscard]] Index dim() const noexcept { return static_cast<Index>(theta.rows()); }
};

/// Order-2 U-statistic with kernel (1/2)(Xi1 - Xi2)(Xj1 - Xj2), evaluated in
/// its centered-sum form 1/(n-1) sum_q (X_qi - mean_i)(X_qj - mean_j).
/// Throws InsufficientDataError when n < 2.
[[nodiscard]] CovarianceEstimate covariance_ustat(const SampleMatrix& x);

/// Wraps an already computed symmetric matrix, attaching the eigendecomposition.
[[nodiscard]] CovarianceEstimate make_covariance_estimate(const Eigen::MatrixXd& sigma);

/// Inverse through the eigendecomposition, V diag(1/alpha) V^T.
/// Throws SingularCovarianceError when the smallest eigenvalue is at or
/// below the relative floor.
[[nodiscard]] PrecisionEstimate precision_from_covariance(const CovarianceEstimate& c);

}  // namespace edgetest
