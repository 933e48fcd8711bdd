#pragma once

#include "edgetest/sample_matrix.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <unordered_map>
#include <vector>

namespace edgetest {

/// A sorted multiset of 1 to 4 variate indices, e.g. {i, i, k} for E[Xi^2 Xk].
class MomentKey {
public:
    static constexpr std::size_t kMaxOrder = 4;

    MomentKey(std::initializer_list<Index> indices);
    explicit MomentKey(std::span<const Index> indices);

    [[nodiscard]] std::size_t order() const noexcept { return order_; }
    [[nodiscard]] Index operator[](std::size_t pos) const noexcept { return idx_[pos]; }
    [[nodiscard]] std::span<const Index> indices() const noexcept { return {idx_.data(), order_}; }

    /// Injective packing of the sorted indices; used as a hash key.
    [[nodiscard]] std::uint64_t code() const noexcept;

    friend bool operator==(const MomentKey& a, const MomentKey& b) noexcept {
        return a.order_ == b.order_ && a.idx_ == b.idx_;
    }
    friend auto operator<=>(const MomentKey& a, const MomentKey& b) noexcept {
        if (auto c = a.order_ <=> b.order_; c != 0) return c;
        return a.idx_ <=> b.idx_;
    }

private:
    std::array<Index, kMaxOrder> idx_{};
    std::size_t order_ = 0;
};

/// Raw mixed moments (1/n) sum_q prod_{i in key} X[q,i], computed in one pass
/// over the rows. First and second order moments are always held densely;
/// third and fourth order moments only for the keys requested at build time.
class MomentStore {
public:
    [[nodiscard]] Index samples() const noexcept { return n_; }
    [[nodiscard]] Index variates() const noexcept { return p_; }

    /// Permutation invariant lookup. Throws MissingMomentError for an
    /// order 3/4 key that was not requested.
    [[nodiscard]] double operator()(const MomentKey& key) const;
    [[nodiscard]] double operator()(std::initializer_list<Index> indices) const {
        return (*this)(MomentKey(indices));
    }

    [[nodiscard]] bool contains(const MomentKey& key) const noexcept;

    [[nodiscard]] const Eigen::VectorXd& means() const noexcept { return first_; }
    [[nodiscard]] const Eigen::MatrixXd& second() const noexcept { return second_; }
    [[nodiscard]] std::size_t higher_order_count() const noexcept { return higher_.size(); }

    /// Store with caller-provided values, no data pass. Missing first/second
    /// order values default to zero. Intended for formula checks against
    /// arbitrary moment assignments.
    static MomentStore from_values(Index p, Index n,
                                   const std::vector<std::pair<MomentKey, double>>& values);

private:
    friend MomentStore build_moments(const SampleMatrix&, std::span<const MomentKey>);

    void check_range(const MomentKey& key) const;

    Index n_ = 0;
    Index p_ = 0;
    Eigen::VectorXd first_;
    Eigen::MatrixXd second_;
    std::unordered_map<std::uint64_t, double> higher_;
};

/// One pass over X accumulating every requested moment. Order 1/2 moments
/// are always included. Duplicate keys are fine.
[[nodiscard]] MomentStore build_moments(const SampleMatrix& x, std::span<const MomentKey> needed);

/// Every multiset of size 1..max_order over p indices.
[[nodiscard]] std::vector<MomentKey> all_moment_keys(Index p, std::size_t max_order = 4);

[[nodiscard]] inline MomentStore build_all_moments(const SampleMatrix& x) {
    const auto keys = all_moment_keys(x.cols());
    return build_moments(x, keys);
}

/// Convenience facade matching `store(indices)`.
[[nodiscard]] inline double moment(const MomentStore& store, std::initializer_list<Index> indices) {
    return store(indices);
}

}  // namespace edgetest
