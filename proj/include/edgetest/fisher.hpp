#pragma once

#include "edgetest/sample_matrix.hpp"
#include "edgetest/ustat.hpp"

namespace edgetest {

/// Partial correlation of X_i and X_j given all remaining variates, with its
/// Student-t statistic.
struct FisherResult {
    double rho = 0.0;
    double statistic = 0.0;  // +/-infinity when |rho| == 1
    Index dof = 0;
    double critical = 0.0;
    bool reject = false;
};

/// -theta_ij / sqrt(theta_ii theta_jj). Throws DegeneratePrecisionError when
/// either diagonal entry is not positive.
[[nodiscard]] double partial_correlation(const PrecisionEstimate& theta, Index i, Index j);

/// Upper 1 - delta/2 quantile of Student's t with `dof` degrees of freedom.
[[nodiscard]] double student_t_upper_quantile(double delta, Index dof);

/// t-test of a zero partial correlation with dof = n - p. Rejects when
/// |statistic| exceeds the two-sided critical value.
[[nodiscard]] FisherResult fisher_test(const PrecisionEstimate& theta, Index n, Index i, Index j,
                                       double delta);

/// Same test starting from the raw samples. Throws InsufficientDataError
/// when n <= p.
[[nodiscard]] FisherResult fisher_test(const SampleMatrix& x, Index i, Index j, double delta);

}  // namespace edgetest
