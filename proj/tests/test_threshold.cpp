#include "doctest.h"

#include "edgetest/errors.hpp"
#include "edgetest/simulate.hpp"
#include "edgetest/threshold.hpp"
#include "support.hpp"

#include <limits>

using namespace edgetest;

namespace {

// delta with Phi^{-1}(1 - delta/2) = 2, i.e. 2 * (1 - Phi(2)).
const double kDeltaForTwo = std::erfc(2.0 / std::sqrt(2.0));

CovCovMatrix matrix_of(Index p, const Eigen::MatrixXd& values) { return CovCovMatrix(p, values); }

}  // namespace

TEST_CASE("normal quantile") {
    CHECK(normal_upper_quantile(kDeltaForTwo) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(normal_upper_quantile(0.05) == doctest::Approx(1.959963984540054));
    CHECK(kDeltaForTwo == doctest::Approx(0.0455).epsilon(0.01));
}

TEST_CASE("epsilon examples") {
    const auto zero = matrix_of(2, Eigen::MatrixXd::Zero(3, 3));
    CHECK(epsilon_eig(zero, 0.05) == 0.0);
    CHECK(epsilon_trace(zero, 0.05) == 0.0);

    Eigen::MatrixXd half = Eigen::MatrixXd::Zero(3, 3);
    half(0, 0) = 0.5;
    CHECK(epsilon_eig(matrix_of(2, half), kDeltaForTwo) == doctest::Approx(2.0));

    CHECK(epsilon_trace(matrix_of(2, Eigen::MatrixXd::Identity(3, 3)), kDeltaForTwo) ==
          doctest::Approx(std::sqrt(6.0) * 2.0));
    CHECK(std::sqrt(6.0) * 2.0 == doctest::Approx(4.899).epsilon(1e-3));
}

TEST_CASE("trace bound dominates eigenvalue bound") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> z;
    for (int rep = 0; rep < 200; ++rep) {
        Eigen::MatrixXd a(6, 6);
        for (Eigen::Index k = 0; k < a.size(); ++k) a.data()[k] = z(rng);
        const auto c = matrix_of(3, a * a.transpose());
        for (double delta : {0.01, 0.05, 0.3}) CHECK(epsilon_eig(c, delta) <= epsilon_trace(c, delta));
    }
}

TEST_CASE("negative diagonal entries are clamped") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
    m(0, 0) = -1.0;
    m(1, 1) = 2.0;
    const auto c = matrix_of(2, m);
    CHECK(covcov_trace(c) == 2.0);
    CHECK(covcov_max_eigenvalue(c) == doctest::Approx(2.0));
}

TEST_CASE("conservative threshold") {
    const std::vector<double> alpha{2.0, 1.0};
    CHECK(conservative_threshold(0.0, alpha) == 0.0);
    CHECK(conservative_threshold(0.5, alpha) == doctest::Approx(std::sqrt(1.0 / 36.0 + 1.0)));
    CHECK(conservative_threshold(0.5, alpha) == doctest::Approx(1.0138).epsilon(1e-4));
    CHECK(conservative_threshold(0.5, alpha, 3.0) == doctest::Approx(3.0 * std::sqrt(1.0 / 36.0 + 1.0)));
    CHECK(std::isinf(conservative_threshold(1.0, alpha)));
    CHECK(std::isinf(conservative_threshold(1.5, alpha)));
    double previous = 0.0;
    for (double eps = 0.01; eps < 0.99; eps += 0.01) {
        const double t = conservative_threshold(eps, alpha);
        CHECK(t > previous);
        previous = t;
    }
}

TEST_CASE("hoeffding radius") {
    CHECK(hoeffding_epsilon(0.0, 1.0, 1, 2.0 / std::exp(1.0)) == doctest::Approx(1.0));
    const double e1 = hoeffding_epsilon(-1.0, 2.0, 1000, 0.05);
    CHECK(hoeffding_epsilon(-1.0, 2.0, 4000, 0.05) == doctest::Approx(e1 / 2.0));
    CHECK_THROWS_AS((void)hoeffding_epsilon(1.0, 1.0, 10, 0.05), InvalidSupportError);
    CHECK_THROWS_AS((void)hoeffding_epsilon(0.0, 1.0, 0, 0.05), InsufficientDataError);
}

TEST_CASE("config validation") {
    TestConfig c;
    CHECK_NOTHROW(c.validate());
    for (double bad : {0.0, 1.0, -0.1, std::numeric_limits<double>::quiet_NaN()}) {
        c.delta = bad;
        CHECK_THROWS_AS(c.validate(), ConfigError);
    }
    c.delta = 0.05;
    c.mu = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("threshold ordering on one dataset") {
    auto rng = make_rng(5, {});
    const auto sigma = random_correlation(5, rng, 25);
    for (Index n : {Index{200}, Index{2000}, Index{20000}}) {
        const auto a = analyze(sample_gaussian(sigma, n, rng));
        for (double delta : {0.01, 0.05, 0.2}) {
            TestConfig c{delta, 1.0, BoundKind::Eig, false};
            const auto eig = decide(a, c);
            c.bound = BoundKind::Trace;
            const auto trace = decide(a, c);
            CHECK(eig.threshold <= trace.threshold);
            CHECK(eig.epsilon <= trace.epsilon);
        }
    }
}

TEST_CASE("decision rule and infinite branch") {
    auto rng = make_rng(6, {});
    const auto x = sample_gaussian(Eigen::MatrixXd::Identity(4, 4), 8, rng);
    const auto r = edge_test(x, {0.05, 1.0, BoundKind::Eig, false});
    CHECK(r.infinite());
    CHECK(r.edge_count() == 0);
    CHECK_FALSE(r.decisions.any());

    RowMatrix two(2, 2);
    two << 0, 1, 1, 0;
    CHECK_THROWS_AS((void)edge_test(SampleMatrix(two), {}), InsufficientDataError);

    const auto a = analyze(x, AnalysisScope::DiagonalOnly);
    CHECK_FALSE(a.lambda_max.has_value());
    CHECK_THROWS_AS((void)decide(a, {0.05, 1.0, BoundKind::Eig, false}), ConfigError);
}

TEST_CASE("strong edge is detected and decisions are symmetric") {
    Eigen::MatrixXd theta = Eigen::MatrixXd::Identity(4, 4);
    theta(0, 1) = theta(1, 0) = 0.6;
    const Eigen::MatrixXd sigma = theta.inverse();
    auto rng = make_rng(7, {});
    const auto x = sample_gaussian(sigma, 200000, rng);
    for (BoundKind kind : {BoundKind::Eig, BoundKind::Trace}) {
        const auto r = edge_test(x, {0.05, 1.0, kind, false});
        CHECK(r.decisions(0, 1));
        CHECK(r.decisions == r.decisions.transpose());
        for (Eigen::Index i = 0; i < 4; ++i) CHECK_FALSE(r.decisions(i, i));
        CHECK(r.decisions(2, 3) == (std::abs(r.theta_hat.theta(2, 3)) >= r.threshold));
    }
}

TEST_CASE("null graph: no edges in at least 95% of datasets") {
    int clean = 0;
    const int trials = 40;
    for (int t = 0; t < trials; ++t) {
        auto rng = make_rng(8, {static_cast<std::uint64_t>(t)});
        const auto x = sample_gaussian(Eigen::MatrixXd::Identity(6, 6), 100000, rng);
        clean += edge_test(x, {0.05, 1.0, BoundKind::Eig, false}).edge_count() == 0;
    }
    CHECK(clean >= 0.95 * trials);
}

TEST_CASE("n not exceeding p gives a singular covariance") {
    auto rng = make_rng(9, {});
    Eigen::MatrixXd sigma = Eigen::MatrixXd::Identity(6, 6);
    const auto x = sample_gaussian(sigma, 6, rng);
    // A 6-row sample of 6 variates has rank at most 5 after centering.
    CHECK_THROWS_AS((void)analyze(x), SingularCovarianceError);
    const auto y = sample_gaussian(Eigen::MatrixXd::Identity(3, 3), 3, rng);
    CHECK_THROWS_AS((void)analyze(y), SingularCovarianceError);
}
