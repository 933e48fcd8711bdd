#pragma once

#include "edgetest/moments.hpp"
#include "edgetest/sample_matrix.hpp"

#include <Eigen/Dense>

#include <array>
#include <iosfwd>
#include <utility>
#include <vector>

namespace edgetest {

/// One of the seven equality patterns of (i, j, k, l) in Cov(S_ij, S_kl),
/// together with a canonical representative tuple.
///
/// The covariance is invariant under swapping i<->j, k<->l and the two
/// pairs. Every tuple is mapped to the representative of its orbit whose
/// shape matches the case template:
///
///   1: (i, j, k, l)  all distinct
///   2: (i, i, k, k)  i != k
///   3: (i, i, k, l)  k != l, both != i
///   4: (i, j, i, l)  j != l, both != i
///   5: (i, j, i, j)  i != j
///   6: (i, i, i, l)  i != l
///   7: (i, i, i, i)
struct CaseId {
    int value = 0;
    std::array<Index, 4> tuple{};

    friend bool operator==(const CaseId&, const CaseId&) = default;
};

[[nodiscard]] CaseId classify_case(Index i, Index j, Index k, Index l);

/// zeta_1 = Cov(E[h | u1], E[g | v1]) for the case, from plug-in raw moments.
[[nodiscard]] double zeta1(const CaseId& c, const MomentStore& store);

/// The all-distinct formula evaluated at arbitrary (possibly repeated)
/// indices. Every specialized case collapses to this under substitution.
[[nodiscard]] double zeta1_general(const MomentStore& store, Index i, Index j, Index k, Index l);

/// First-order covariance of two U-statistic covariance entries:
/// C(n,2)^{-1} * 2(n-2) * zeta_1. The O(n^-2) term is dropped.
/// Throws InsufficientDataError when n < 3.
[[nodiscard]] double covcov_entry(Index i, Index j, Index k, Index l, const MomentStore& store,
                                  Index n);

/// Estimated covariance among the q = p(p+1)/2 upper-triangular entries of
/// the covariance estimate. Flat index order is row-major over i <= j:
/// (0,0), (0,1), ..., (0,p-1), (1,1), ...
class CovCovMatrix {
public:
    CovCovMatrix(Index p, Eigen::MatrixXd values);

    [[nodiscard]] Index variates() const noexcept { return p_; }
    [[nodiscard]] Index size() const noexcept { return q_; }
    [[nodiscard]] const Eigen::MatrixXd& values() const noexcept { return values_; }

    [[nodiscard]] Index flat_index(Index i, Index j) const;
    [[nodiscard]] std::pair<Index, Index> pair_of(Index flat) const;

    /// Entry for Cov(S_ij, S_kl), in any index order.
    [[nodiscard]] double operator()(Index i, Index j, Index k, Index l) const;

private:
    Index p_;
    Index q_;
    Eigen::MatrixXd values_;
};

[[nodiscard]] constexpr Index upper_size(Index p) noexcept { return p * (p + 1) / 2; }

/// Exact list of moments needed by every entry of the full matrix.
[[nodiscard]] std::vector<MomentKey> covcov_moment_demand(Index p);

/// Moments needed for the diagonal only (variances of each S_ij); O(p^2) keys.
[[nodiscard]] std::vector<MomentKey> covcov_diagonal_moment_demand(Index p);

[[nodiscard]] CovCovMatrix covcov_matrix(const MomentStore& store, Index n, Index p);

/// Diagonal of the covcov matrix in flat order, without the off-diagonal work.
[[nodiscard]] Eigen::VectorXd covcov_diagonal(const MomentStore& store, Index n, Index p);

/// Moment pass plus matrix fill straight from data.
[[nodiscard]] CovCovMatrix covcov_from_data(const SampleMatrix& x);

/// CSV dump: header `pair,0-0,0-1,...` naming the flat indices, then one row
/// per flat index starting with its `i-j` label. Values use round-trip
/// precision.
void write_covcov_csv(std::ostream& out, const CovCovMatrix& c);

}  // namespace edgetest
