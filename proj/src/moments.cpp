#include "edgetest/moments.hpp"

#include "edgetest/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace edgetest {

MomentKey::MomentKey(std::initializer_list<Index> indices)
    : MomentKey(std::span<const Index>(indices.begin(), indices.size())) {}

MomentKey::MomentKey(std::span<const Index> indices) : order_(indices.size()) {
    if (order_ == 0 || order_ > kMaxOrder) {
        throw ConfigError("moment order must be between 1 and 4, got " + std::to_string(order_));
    }
    std::copy(indices.begin(), indices.end(), idx_.begin());
    std::sort(idx_.begin(), idx_.begin() + static_cast<std::ptrdiff_t>(order_));
}

std::uint64_t MomentKey::code() const noexcept {
    // 15 bits per index (+1 so that absent slots are distinguishable), order in the top bits.
    std::uint64_t c = order_;
    for (std::size_t k = 0; k < kMaxOrder; ++k) {
        c = (c << 15) | (k < order_ ? static_cast<std::uint64_t>(idx_[k] + 1) : 0u);
    }
    return c;
}

void MomentStore::check_range(const MomentKey& key) const {
    for (Index i : key.indices()) {
        if (i >= p_) {
            throw ConfigError("moment index " + std::to_string(i) + " out of range for p = " +
                              std::to_string(p_));
        }
    }
}

bool MomentStore::contains(const MomentKey& key) const noexcept {
    for (Index i : key.indices()) {
        if (i >= p_) return false;
    }
    return key.order() <= 2 || higher_.contains(key.code());
}

double MomentStore::operator()(const MomentKey& key) const {
    check_range(key);
    switch (key.order()) {
        case 1:
            return first_(static_cast<Eigen::Index>(key[0]));
        case 2:
            return second_(static_cast<Eigen::Index>(key[0]), static_cast<Eigen::Index>(key[1]));
        default: {
            auto it = higher_.find(key.code());
            if (it == higher_.end()) {
                std::string s = "moment E[";
                for (Index i : key.indices()) s += "X" + std::to_string(i);
                throw MissingMomentError(s + "] was not requested when the store was built");
            }
            return it->second;
        }
    }
}

MomentStore MomentStore::from_values(Index p, Index n,
                                     const std::vector<std::pair<MomentKey, double>>& values) {
    MomentStore store;
    store.n_ = n;
    store.p_ = p;
    const auto ep = static_cast<Eigen::Index>(p);
    store.first_ = Eigen::VectorXd::Zero(ep);
    store.second_ = Eigen::MatrixXd::Zero(ep, ep);
    for (const auto& [key, value] : values) {
        store.check_range(key);
        switch (key.order()) {
            case 1:
                store.first_(static_cast<Eigen::Index>(key[0])) = value;
                break;
            case 2: {
                const auto a = static_cast<Eigen::Index>(key[0]);
                const auto b = static_cast<Eigen::Index>(key[1]);
                store.second_(a, b) = value;
                store.second_(b, a) = value;
                break;
            }
            default:
                store.higher_[key.code()] = value;
        }
    }
    return store;
}

namespace {

// A third or fourth order product expressed through the per-row buffer of
// pairwise products: pp[lhs] * x[rhs] (order 3) or pp[lhs] * pp[rhs] (order 4).
struct ProductPlan {
    std::size_t lhs;
    std::size_t rhs;
    std::size_t slot;
};

constexpr Index kBlockRows = 2048;

}  // namespace

MomentStore build_moments(const SampleMatrix& x, std::span<const MomentKey> needed) {
    const Index n = x.rows();
    const Index p = x.cols();

    MomentStore store;
    store.n_ = n;
    store.p_ = p;
    for (const auto& key : needed) store.check_range(key);

    std::vector<MomentKey> higher;
    for (const auto& key : needed) {
        if (key.order() > 2) higher.push_back(key);
    }
    std::sort(higher.begin(), higher.end());
    higher.erase(std::unique(higher.begin(), higher.end()), higher.end());

    std::vector<ProductPlan> third;
    std::vector<ProductPlan> fourth;
    for (std::size_t s = 0; s < higher.size(); ++s) {
        const auto& k = higher[s];
        if (k.order() == 3) {
            third.push_back({k[0] * p + k[1], k[2], s});
        } else {
            fourth.push_back({k[0] * p + k[1], k[2] * p + k[3], s});
        }
    }

    std::vector<double> total1(p, 0.0), block1(p);
    std::vector<double> total2(p * p, 0.0), block2(p * p);
    std::vector<double> totalh(higher.size(), 0.0), blockh(higher.size());
    std::vector<double> pp(p * p, 0.0);

    // Rows are summed in fixed-size blocks and the block sums added to the
    // totals, which keeps rounding error growth well below plain summation.
    for (Index start = 0; start < n; start += kBlockRows) {
        const Index stop = std::min(n, start + kBlockRows);
        std::fill(block1.begin(), block1.end(), 0.0);
        std::fill(block2.begin(), block2.end(), 0.0);
        std::fill(blockh.begin(), blockh.end(), 0.0);
        for (Index q = start; q < stop; ++q) {
            const double* row = x.row(q).data();
            for (Index a = 0; a < p; ++a) {
                block1[a] += row[a];
                for (Index b = a; b < p; ++b) {
                    const double v = row[a] * row[b];
                    pp[a * p + b] = v;
                    block2[a * p + b] += v;
                }
            }
            for (const auto& t : third) blockh[t.slot] += pp[t.lhs] * row[t.rhs];
            for (const auto& t : fourth) blockh[t.slot] += pp[t.lhs] * pp[t.rhs];
        }
        for (Index a = 0; a < p; ++a) total1[a] += block1[a];
        for (std::size_t k = 0; k < total2.size(); ++k) total2[k] += block2[k];
        for (std::size_t k = 0; k < totalh.size(); ++k) totalh[k] += blockh[k];
    }

    const double inv_n = 1.0 / static_cast<double>(n);
    const auto ep = static_cast<Eigen::Index>(p);
    store.first_.resize(ep);
    store.second_.resize(ep, ep);
    for (Index a = 0; a < p; ++a) {
        store.first_(static_cast<Eigen::Index>(a)) = total1[a] * inv_n;
        for (Index b = a; b < p; ++b) {
            const double v = total2[a * p + b] * inv_n;
            store.second_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v;
            store.second_(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = v;
        }
    }
    store.higher_.reserve(higher.size());
    for (std::size_t s = 0; s < higher.size(); ++s) {
        store.higher_.emplace(higher[s].code(), totalh[s] * inv_n);
    }
    return store;
}

std::vector<MomentKey> all_moment_keys(Index p, std::size_t max_order) {
    std::vector<MomentKey> keys;
    std::array<Index, MomentKey::kMaxOrder> idx{};
    // Non-decreasing index tuples enumerate each multiset exactly once.
    auto recurse = [&](auto&& self, std::size_t depth, std::size_t order, Index lo) -> void {
        if (depth == order) {
            keys.emplace_back(std::span<const Index>(idx.data(), order));
            return;
        }
        for (Index i = lo; i < p; ++i) {
            idx[depth] = i;
            self(self, depth + 1, order, i);
        }
    };
    for (std::size_t order = 1; order <= std::min(max_order, MomentKey::kMaxOrder); ++order) {
        recurse(recurse, 0, order, 0);
    }
    return keys;
}

}  // namespace edgetest
