#include "edgetest/threshold.hpp"

#include "edgetest/errors.hpp"

#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <limits>
#include <string>

namespace edgetest {

std::string_view to_string(BoundKind kind) noexcept {
    return kind == BoundKind::Eig ? "eig" : "trace";
}

namespace {

void check_delta(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw ConfigError("delta must lie in (0, 1), got " + std::to_string(delta));
    }
}

Eigen::MatrixXd clamped(const CovCovMatrix& c) {
    Eigen::MatrixXd m = c.values();
    for (Eigen::Index k = 0; k < m.rows(); ++k) m(k, k) = std::max(m(k, k), 0.0);
    return m;
}

}  // namespace

void TestConfig::validate() const {
    check_delta(delta);
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        throw ConfigError("mu must be a positive finite number, got " + std::to_string(mu));
    }
}

double normal_upper_quantile(double delta) {
    check_delta(delta);
    const boost::math::normal_distribution<double> standard;
    return boost::math::quantile(boost::math::complement(standard, delta / 2.0));
}

double covcov_max_eigenvalue(const CovCovMatrix& c) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(clamped(c), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error("covcov eigendecomposition failed");
    return std::max(solver.eigenvalues().maxCoeff(), 0.0);
}

double covcov_trace(const Eigen::VectorXd& diagonal) {
    return diagonal.cwiseMax(0.0).sum();
}

double covcov_trace(const CovCovMatrix& c) {
    return covcov_trace(Eigen::VectorXd(c.values().diagonal()));
}

double epsilon_from_spread(double spread, double delta) {
    return std::sqrt(2.0 * std::max(spread, 0.0)) * normal_upper_quantile(delta);
}

double epsilon_eig(const CovCovMatrix& c, double delta) {
    return epsilon_from_spread(covcov_max_eigenvalue(c), delta);
}

double epsilon_trace(const CovCovMatrix& c, double delta) {
    return epsilon_from_spread(covcov_trace(c), delta);
}

double conservative_threshold(double eps, std::span<const double> eigenvalues, double mu) {
    if (eigenvalues.empty()) throw ConfigError("no eigenvalues supplied");
    if (!(eps >= 0.0)) throw ConfigError("epsilon must be nonnegative");
    // Weyl's bound needs eps strictly below every eigenvalue; the smallest
    // is last in descending order.
    if (eps >= eigenvalues.back()) return std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (double a : eigenvalues) {
        const double term = eps / (a * (a - eps));
        sum += term * term;
    }
    return mu * std::sqrt(sum);
}

double conservative_threshold(double eps, const Eigen::VectorXd& eigenvalues, double mu) {
    return conservative_threshold(
        eps, std::span<const double>(eigenvalues.data(), static_cast<std::size_t>(eigenvalues.size())),
        mu);
}

double hoeffding_epsilon(double a, double b, Index n, double delta) {
    if (!(b > a)) throw InvalidSupportError("support must satisfy b > a");
    if (n == 0) throw InsufficientDataError("hoeffding radius needs n >= 1");
    check_delta(delta);
    return (b - a) * std::sqrt(std::log(2.0 / delta) / static_cast<double>(n));
}

Analysis analyze(const SampleMatrix& x, AnalysisScope scope) {
    Analysis out;
    out.n = x.rows();
    out.p = x.cols();
    if (out.n < 3) {
        throw InsufficientDataError("edge test needs n >= 3, got " + std::to_string(out.n));
    }
    if (out.n <= out.p) {
        out.warnings.push_back("n = " + std::to_string(out.n) + " does not exceed p = " +
                               std::to_string(out.p) + "; the covariance estimate is rank deficient");
    }
    out.covariance = covariance_ustat(x);
    out.precision = precision_from_covariance(out.covariance);

    if (scope == AnalysisScope::Full) {
        const auto store = build_moments(x, covcov_moment_demand(out.p));
        out.covcov = covcov_matrix(store, out.n, out.p);
        out.covcov_diagonal = out.covcov->values().diagonal();
        out.lambda_max = covcov_max_eigenvalue(*out.covcov);
    } else {
        const auto store = build_moments(x, covcov_diagonal_moment_demand(out.p));
        out.covcov_diagonal = covcov_diagonal(store, out.n, out.p);
    }
    out.trace = covcov_trace(out.covcov_diagonal);
    return out;
}

bool TestResult::infinite() const noexcept { return std::isinf(threshold); }

Index TestResult::edge_count() const noexcept {
    Index count = 0;
    for (Eigen::Index i = 0; i < decisions.rows(); ++i)
        for (Eigen::Index j = i + 1; j < decisions.cols(); ++j) count += decisions(i, j) ? 1 : 0;
    return count;
}

TestResult decide(const Analysis& analysis, const TestConfig& config) {
    config.validate();
    TestResult r;
    r.bound = config.bound;
    r.delta = config.delta;
    r.mu = config.mu;
    r.theta_hat = analysis.precision;
    r.diagonal_included = config.include_diagonal;
    r.warnings = analysis.warnings;
    r.diagnostics.lambda_max = analysis.lambda_max;
    r.diagnostics.trace = analysis.trace;
    r.diagnostics.smallest_eigenvalue = analysis.covariance.smallest_eigenvalue();

    if (config.bound == BoundKind::Eig) {
        if (!analysis.lambda_max) {
            throw ConfigError("eigenvalue bound requested from a diagonal-only analysis");
        }
        r.epsilon = epsilon_from_spread(*analysis.lambda_max, config.delta);
    } else {
        r.epsilon = epsilon_from_spread(analysis.trace, config.delta);
    }
    r.threshold = conservative_threshold(r.epsilon, analysis.covariance.eigenvalues, config.mu);

    const auto p = static_cast<Eigen::Index>(analysis.p);
    const Eigen::MatrixXd& theta = r.theta_hat.theta;
    r.decisions = BoolMatrix::Constant(p, p, false);
    r.self_loops = Eigen::Matrix<bool, Eigen::Dynamic, 1>::Constant(p, false);
    for (Eigen::Index i = 0; i < p; ++i) {
        r.self_loops(i) = std::abs(theta(i, i)) >= r.threshold;
        if (config.include_diagonal) r.decisions(i, i) = r.self_loops(i);
        for (Eigen::Index j = i + 1; j < p; ++j) {
            const bool reject = std::abs(theta(i, j)) >= r.threshold;
            r.decisions(i, j) = reject;
            r.decisions(j, i) = reject;
        }
    }
    return r;
}

TestResult edge_test(const SampleMatrix& x, const TestConfig& config) {
    config.validate();
    const auto scope = config.bound == BoundKind::Eig ? AnalysisScope::Full : AnalysisScope::DiagonalOnly;
    return decide(analyze(x, scope), config);
}

}  // namespace edgetest
