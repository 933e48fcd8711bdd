#pragma once

#include "edgetest/sample_matrix.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

namespace testing_support {

inline edgetest::SampleMatrix uniform_data(std::size_t n, std::size_t p, std::uint64_t seed, double lo = -10,
                                           double hi = 10) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    edgetest::RowMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
    for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = u(rng);
    return edgetest::SampleMatrix(m);
}

inline edgetest::SampleMatrix normal_data(std::size_t n, std::size_t p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z;
    edgetest::RowMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
    for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = z(rng);
    return edgetest::SampleMatrix(m);
}

inline bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace testing_support
