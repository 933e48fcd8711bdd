#include "doctest.h"

#include "edgetest/errors.hpp"
#include "edgetest/ustat.hpp"
#include "support.hpp"

#include <algorithm>
#include <numeric>

using namespace edgetest;

namespace {

// Average of the pairwise kernel 1/2 (X_q - X_r)(X_q - X_r)^T over ordered pairs q != r.
Eigen::MatrixXd pairwise_oracle(const SampleMatrix& x) {
    const auto p = static_cast<Eigen::Index>(x.cols());
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(p, p);
    for (Index q = 0; q < x.rows(); ++q) {
        for (Index r = 0; r < x.rows(); ++r) {
            if (q == r) continue;
            for (Eigen::Index i = 0; i < p; ++i) {
                for (Eigen::Index j = 0; j < p; ++j) {
                    s(i, j) += 0.5 * (x(q, static_cast<Index>(i)) - x(r, static_cast<Index>(i))) *
                               (x(q, static_cast<Index>(j)) - x(r, static_cast<Index>(j)));
                }
            }
        }
    }
    const double n = static_cast<double>(x.rows());
    return s / (n * (n - 1.0));
}

}  // namespace

TEST_CASE("two rows") {
    RowMatrix m(2, 2);
    m << 0, 0, 1, 1;
    const auto c = covariance_ustat(SampleMatrix(m));
    CHECK(c.sigma(0, 0) == doctest::Approx(0.5));
    CHECK(c.sigma(0, 1) == doctest::Approx(0.5));
    CHECK(c.sigma(1, 1) == doctest::Approx(0.5));
}

TEST_CASE("constant columns give zero") {
    RowMatrix m = RowMatrix::Constant(9, 3, -2.0);
    const auto c = covariance_ustat(SampleMatrix(m));
    CHECK(c.sigma.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("centered form equals pairwise kernel form") {
    const auto x = testing_support::uniform_data(200, 4, 3);
    const auto c = covariance_ustat(x);
    const Eigen::MatrixXd oracle = pairwise_oracle(x);
    for (Eigen::Index i = 0; i < 4; ++i)
        for (Eigen::Index j = 0; j < 4; ++j) CHECK(testing_support::close_rel(c.sigma(i, j), oracle(i, j), 1e-10));
}

TEST_CASE("invariant to row order") {
    const auto x = testing_support::uniform_data(60, 3, 9);
    RowMatrix shuffled = x.values();
    std::vector<Eigen::Index> perm(60);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), std::mt19937_64(4));
    for (Eigen::Index r = 0; r < 60; ++r) shuffled.row(r) = x.values().row(perm[static_cast<std::size_t>(r)]);
    const auto a = covariance_ustat(x);
    const auto b = covariance_ustat(SampleMatrix(shuffled));
    CHECK((a.sigma - b.sigma).cwiseAbs().maxCoeff() <= 1e-12 * a.sigma.cwiseAbs().maxCoeff());
}

TEST_CASE("eigenvalues descending and reconstruct sigma") {
    const auto c = covariance_ustat(testing_support::normal_data(500, 5, 2));
    for (Eigen::Index k = 1; k < 5; ++k) CHECK(c.eigenvalues(k - 1) >= c.eigenvalues(k));
    const Eigen::MatrixXd back = c.eigenvectors * c.eigenvalues.asDiagonal() * c.eigenvectors.transpose();
    CHECK((back - c.sigma).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("unbiased over many datasets") {
    // Mean of sigma_hat across 4000 datasets of size 5 with unit-variance columns.
    Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(2, 2);
    const int trials = 4000;
    for (int t = 0; t < trials; ++t) mean += covariance_ustat(testing_support::normal_data(5, 2, 1000 + t)).sigma;
    mean /= trials;
    // sd of the variance estimate at n = 5 is sqrt(2/4) ~ 0.71; the mean has SE ~ 0.011.
    CHECK(mean(0, 0) == doctest::Approx(1.0).epsilon(0.05));
    CHECK(mean(1, 1) == doctest::Approx(1.0).epsilon(0.05));
    CHECK(std::abs(mean(0, 1)) < 0.05);
}

TEST_CASE("precision examples") {
    CHECK(precision_from_covariance(make_covariance_estimate(Eigen::MatrixXd::Identity(3, 3)))
              .theta.isApprox(Eigen::MatrixXd::Identity(3, 3)));
    Eigen::MatrixXd d = Eigen::Vector2d(2, 4).asDiagonal();
    const auto theta = precision_from_covariance(make_covariance_estimate(d)).theta;
    CHECK(theta(0, 0) == doctest::Approx(0.5));
    CHECK(theta(1, 1) == doctest::Approx(0.25));
    CHECK(std::abs(theta(0, 1)) < 1e-15);
}

TEST_CASE("precision times covariance is the identity") {
    std::mt19937_64 rng(21);
    std::normal_distribution<double> z;
    for (int rep = 0; rep < 20; ++rep) {
        Eigen::MatrixXd a(5, 5);
        for (Eigen::Index k = 0; k < a.size(); ++k) a.data()[k] = z(rng);
        const Eigen::MatrixXd spd = a * a.transpose() + 0.1 * Eigen::MatrixXd::Identity(5, 5);
        const auto c = make_covariance_estimate(spd);
        const auto p = precision_from_covariance(c);
        CHECK((p.theta * c.sigma - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_CASE("singular and insufficient inputs") {
    RowMatrix one(1, 2);
    one << 1, 2;
    CHECK_THROWS_AS((void)covariance_ustat(SampleMatrix(one)), InsufficientDataError);
    Eigen::MatrixXd rank1(2, 2);
    rank1 << 1, 1, 1, 1;
    try {
        (void)precision_from_covariance(make_covariance_estimate(rank1));
        FAIL("expected a singular covariance error");
    } catch (const SingularCovarianceError& e) {
        CHECK(std::abs(e.smallest_eigenvalue()) < 1e-12);
    }
    CHECK_THROWS_AS((void)precision_from_covariance(make_covariance_estimate(Eigen::MatrixXd::Zero(2, 2))),
                    SingularCovarianceError);
}
