#include "edgetest/ustat.hpp"

#include "edgetest/errors.hpp"

#include <sstream>

namespace edgetest {

CovarianceEstimate make_covariance_estimate(const Eigen::MatrixXd& sigma) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sigma);
    if (solver.info() != Eigen::Success) {
        throw Error("symmetric eigendecomposition failed");
    }
    // Eigen returns ascending order; reverse both values and vectors.
    CovarianceEstimate est;
    est.sigma = sigma;
    est.eigenvalues = solver.eigenvalues().reverse();
    est.eigenvectors = solver.eigenvectors().rowwise().reverse();
    return est;
}

CovarianceEstimate covariance_ustat(const SampleMatrix& x) {
    const Index n = x.rows();
    if (n < 2) {
        throw InsufficientDataError("covariance U-statistic needs at least 2 samples, got " +
                                    std::to_string(n));
    }
    const Eigen::RowVectorXd mean = x.values().colwise().mean();
    const RowMatrix centered = x.values().rowwise() - mean;
    Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(centered.cols(), centered.cols());
    sigma.selfadjointView<Eigen::Lower>().rankUpdate(centered.transpose());
    sigma = sigma.selfadjointView<Eigen::Lower>();
    sigma /= static_cast<double>(n - 1);
    return make_covariance_estimate(sigma);
}

PrecisionEstimate precision_from_covariance(const CovarianceEstimate& c) {
    const double smallest = c.smallest_eigenvalue();
    const double largest = c.largest_eigenvalue();
    if (!(smallest > kSingularityFloor * largest) || !(largest > 0.0)) {
        std::ostringstream msg;
        msg << "covariance estimate is singular: smallest eigenvalue " << smallest
            << " <= " << kSingularityFloor << " * largest eigenvalue " << largest;
        throw SingularCovarianceError(msg.str(), smallest);
    }
    const Eigen::VectorXd inv = c.eigenvalues.cwiseInverse();
    PrecisionEstimate out;
    out.theta = c.eigenvectors * inv.asDiagonal() * c.eigenvectors.transpose();
    // Symmetrize away rounding asymmetry of the triple product.
    out.theta = 0.5 * (out.theta + out.theta.transpose()).eval();
    return out;
}

}  // namespace edgetest
