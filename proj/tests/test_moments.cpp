#include "doctest.h"

#include "edgetest/errors.hpp"
#include "edgetest/moments.hpp"
#include "support.hpp"

#include <algorithm>
#include <array>
#include <chrono>

using namespace edgetest;

namespace {

double direct_moment(const SampleMatrix& x, std::span<const Index> idx) {
    double sum = 0.0;
    for (Index q = 0; q < x.rows(); ++q) {
        double prod = 1.0;
        for (Index i : idx) prod *= x(q, i);
        sum += prod;
    }
    return sum / static_cast<double>(x.rows());
}

}  // namespace

TEST_CASE("two-row hand computation") {
    RowMatrix m(2, 2);
    m << 1, 2, 3, 4;
    const auto store = build_moments(SampleMatrix(m), {});
    CHECK(moment(store, {0, 1}) == doctest::Approx(7.0));
    CHECK(moment(store, {1, 0}) == doctest::Approx(7.0));
}

TEST_CASE("constant column mean") {
    RowMatrix m = RowMatrix::Constant(17, 2, 3.25);
    const auto store = build_all_moments(SampleMatrix(m));
    CHECK(moment(store, {0}) == 3.25);
    CHECK(moment(store, {1, 1, 1, 1}) == doctest::Approx(std::pow(3.25, 4)));
}

TEST_CASE("every moment matches direct summation") {
    for (Index p : {Index{1}, Index{3}, Index{5}}) {
        const auto x = testing_support::uniform_data(50, p, 11 + p);
        const auto keys = all_moment_keys(p);
        const auto store = build_moments(x, keys);
        for (const auto& key : keys) {
            const double expected = direct_moment(x, key.indices());
            CHECK(testing_support::close_rel(store(key), expected, 1e-12));
        }
    }
}

TEST_CASE("zero-mean column gives zero first moment") {
    RowMatrix m(4, 1);
    m << -1.5, 0.5, 2.0, -1.0;
    const auto store = build_moments(SampleMatrix(m), {});
    CHECK(std::abs(moment(store, {0})) <= 1e-12);
    CHECK(moment(store, {0, 0}) == doctest::Approx((2.25 + 0.25 + 4.0 + 1.0) / 4));
}

TEST_CASE("lookup is permutation invariant for every multiset, p <= 4") {
    for (Index p = 1; p <= 4; ++p) {
        const auto x = testing_support::uniform_data(20, p, 100 + p);
        const auto store = build_all_moments(x);
        for (Index order = 1; order <= 4; ++order) {
            std::vector<Index> idx(order, 0);
            // Enumerate all ordered tuples; every one must hit the sorted key's value.
            const Index total = static_cast<Index>(std::pow(p, order));
            for (Index code = 0; code < total; ++code) {
                Index c = code;
                for (Index k = 0; k < order; ++k) {
                    idx[k] = c % p;
                    c /= p;
                }
                std::vector<Index> sorted = idx;
                std::sort(sorted.begin(), sorted.end());
                CHECK(store(MomentKey(std::span<const Index>(idx))) ==
                      store(MomentKey(std::span<const Index>(sorted))));
            }
        }
    }
}

TEST_CASE("errors") {
    const auto x = testing_support::uniform_data(10, 3, 5);
    const std::vector<MomentKey> keys{{0, 1, 2}};
    const auto store = build_moments(x, keys);
    CHECK(store.contains(MomentKey{2, 1, 0}));
    CHECK_FALSE(store.contains(MomentKey{0, 0, 1}));
    CHECK_THROWS_AS((void)store({0, 0, 1}), MissingMomentError);
    CHECK_THROWS_AS((void)store({0, 7}), ConfigError);
    const std::vector<MomentKey> bad{{0, 5}};
    CHECK_THROWS_AS((void)build_moments(x, bad), ConfigError);
    CHECK_THROWS_AS(MomentKey({0, 1, 2, 3, 0}), ConfigError);
    CHECK_THROWS_AS(SampleMatrix(RowMatrix(0, 3)), EmptyInputError);
}

TEST_CASE("build time grows linearly in n") {
    const auto keys = all_moment_keys(6);
    const std::array<std::size_t, 3> sizes{50000, 100000, 200000};
    std::vector<SampleMatrix> data;
    for (auto n : sizes) data.push_back(testing_support::normal_data(n, 6, n));
    // Interleaved rounds give each size the same mix of machine states; medians
    // then compare like with like.
    constexpr int kRounds = 9;
    std::array<std::vector<double>, 3> times;
    for (int round = 0; round < kRounds; ++round) {
        for (std::size_t k = 0; k < sizes.size(); ++k) {
            const auto start = std::chrono::steady_clock::now();
            const auto store = build_moments(data[k], keys);
            const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
            CHECK(store.samples() == sizes[k]);
            times[k].push_back(dt.count());
        }
    }
    std::array<double, 3> med{};
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        std::nth_element(times[k].begin(), times[k].begin() + kRounds / 2, times[k].end());
        med[k] = times[k][kRounds / 2];
    }
    CHECK(med[1] / med[0] <= 2.3);
    CHECK(med[2] / med[1] <= 2.3);
}
