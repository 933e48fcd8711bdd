#include "edgetest/fisher.hpp"

#include "edgetest/errors.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>

#include <cmath>
#include <limits>
#include <string>

namespace edgetest {

double partial_correlation(const PrecisionEstimate& theta, Index i, Index j) {
    const auto p = theta.dim();
    if (i >= p || j >= p) throw ConfigError("variate index out of range");
    const auto ei = static_cast<Eigen::Index>(i);
    const auto ej = static_cast<Eigen::Index>(j);
    const double tii = theta.theta(ei, ei);
    const double tjj = theta.theta(ej, ej);
    if (!(tii > 0.0) || !(tjj > 0.0)) {
        throw DegeneratePrecisionError("precision diagonal must be positive for a partial correlation");
    }
    const double rho = -theta.theta(ei, ej) / std::sqrt(tii * tjj);
    return std::clamp(rho, -1.0, 1.0);
}

double student_t_upper_quantile(double delta, Index dof) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw ConfigError("delta must lie in (0, 1), got " + std::to_string(delta));
    }
    if (dof == 0) throw InsufficientDataError("Student t needs at least one degree of freedom");
    const boost::math::students_t_distribution<double> dist(static_cast<double>(dof));
    return boost::math::quantile(boost::math::complement(dist, delta / 2.0));
}

FisherResult fisher_test(const PrecisionEstimate& theta, Index n, Index i, Index j, double delta) {
    const Index p = theta.dim();
    if (n <= p) {
        throw InsufficientDataError("partial correlation test needs n > p (n = " +
                                    std::to_string(n) + ", p = " + std::to_string(p) + ")");
    }
    FisherResult r;
    r.rho = partial_correlation(theta, i, j);
    // n - 2 minus the p - 2 conditioning variates.
    r.dof = n - p;
    r.critical = student_t_upper_quantile(delta, r.dof);
    const double one_minus = 1.0 - r.rho * r.rho;
    if (one_minus <= 0.0) {
        r.statistic = std::copysign(std::numeric_limits<double>::infinity(), r.rho);
        r.reject = true;
        return r;
    }
    r.statistic = r.rho * std::sqrt(static_cast<double>(r.dof) / one_minus);
    r.reject = std::abs(r.statistic) > r.critical;
    return r;
}

FisherResult fisher_test(const SampleMatrix& x, Index i, Index j, double delta) {
    if (x.rows() <= x.cols()) {
        throw InsufficientDataError("partial correlation test needs n > p");
    }
    const auto cov = covariance_ustat(x);
    return fisher_test(precision_from_covariance(cov), x.rows(), i, j, delta);
}

}  // namespace edgetest
