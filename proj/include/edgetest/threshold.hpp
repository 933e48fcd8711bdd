#pragma once

#include "edgetest/covcov.hpp"
#include "edgetest/sample_matrix.hpp"
#include "edgetest/ustat.hpp"

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace edgetest {

enum class BoundKind { Eig, Trace };

[[nodiscard]] std::string_view to_string(BoundKind kind) noexcept;

/// delta: per-edge significance level in (0,1). mu: distortion constant
/// linking eigenvalue error to entrywise precision error; 1 unless the
/// caller has a distribution-specific value.
struct TestConfig {
    double delta = 0.05;
    double mu = 1.0;
    BoundKind bound = BoundKind::Eig;
    bool include_diagonal = false;

    /// Throws ConfigError unless 0 < delta < 1 and mu > 0.
    void validate() const;
};

/// Phi^{-1}(1 - delta/2), computed from the upper tail to keep precision
/// for small delta.
[[nodiscard]] double normal_upper_quantile(double delta);

/// Largest eigenvalue of the covcov matrix with its diagonal clamped at 0,
/// floored at 0.
[[nodiscard]] double covcov_max_eigenvalue(const CovCovMatrix& c);

/// Trace with each diagonal entry clamped at 0.
[[nodiscard]] double covcov_trace(const CovCovMatrix& c);
[[nodiscard]] double covcov_trace(const Eigen::VectorXd& diagonal);

/// sqrt(2 * spread) * Phi^{-1}(1 - delta/2) for a nonnegative spread
/// (largest eigenvalue or trace).
[[nodiscard]] double epsilon_from_spread(double spread, double delta);

[[nodiscard]] double epsilon_eig(const CovCovMatrix& c, double delta);
[[nodiscard]] double epsilon_trace(const CovCovMatrix& c, double delta);

/// mu * sqrt(sum_k (eps / (a_k (a_k - eps)))^2) over the covariance
/// eigenvalues, or +infinity once eps reaches the smallest eigenvalue.
[[nodiscard]] double conservative_threshold(double eps, std::span<const double> eigenvalues,
                                            double mu = 1.0);
[[nodiscard]] double conservative_threshold(double eps, const Eigen::VectorXd& eigenvalues,
                                            double mu = 1.0);

/// Radius (b - a) sqrt(log(2/delta) / n) at which the Hoeffding bound for an
/// order-2 U-statistic with kernel range [a, b] reaches delta.
[[nodiscard]] double hoeffding_epsilon(double a, double b, Index n, double delta);

enum class AnalysisScope {
    Full,          // whole covcov matrix; supports both bounds
    DiagonalOnly,  // O(p^2) moments; trace bound only
};

/// Everything the decision rule needs that does not depend on delta or mu.
struct Analysis {
    Index n = 0;
    Index p = 0;
    CovarianceEstimate covariance;
    PrecisionEstimate precision;
    std::optional<CovCovMatrix> covcov;  // empty for DiagonalOnly
    Eigen::VectorXd covcov_diagonal;
    std::optional<double> lambda_max;    // empty for DiagonalOnly
    double trace = 0.0;
    std::vector<std::string> warnings;
};

/// Covariance, precision and covcov pass. Throws InsufficientDataError for
/// n < 3 and SingularCovarianceError when the covariance cannot be inverted.
[[nodiscard]] Analysis analyze(const SampleMatrix& x, AnalysisScope scope = AnalysisScope::Full);

using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

struct TestDiagnostics {
    std::optional<double> lambda_max;
    double trace = 0.0;
    double smallest_eigenvalue = 0.0;
};

struct TestResult {
    BoundKind bound = BoundKind::Eig;
    double delta = 0.0;
    double mu = 1.0;
    double epsilon = 0.0;
    double threshold = 0.0;  // +infinity when the bound exceeds the smallest eigenvalue
    PrecisionEstimate theta_hat;
    BoolMatrix decisions;    // symmetric; diagonal false unless include_diagonal
    Eigen::Matrix<bool, Eigen::Dynamic, 1> self_loops;  // |theta_ii| >= t, always reported
    bool diagonal_included = false;
    TestDiagnostics diagnostics;
    std::vector<std::string> warnings;

    [[nodiscard]] bool infinite() const noexcept;
    [[nodiscard]] Index edge_count() const noexcept;
};

/// Applies the decision rule |theta_ij| >= t to a finished analysis.
[[nodiscard]] TestResult decide(const Analysis& analysis, const TestConfig& config);

/// Full pipeline: analyze with the scope the bound needs, then decide.
[[nodiscard]] TestResult edge_test(const SampleMatrix& x, const TestConfig& config);

}  // namespace edgetest
