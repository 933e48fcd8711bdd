#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>

namespace edgetest {

using Index = std::size_t;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// n observations (rows) of p variates (columns), stored row-major so that a
/// single pass over the data walks memory contiguously.
///
/// Construction rejects empty matrices and non-finite entries. The n >= 2
/// requirement of the U-statistic is checked by the estimators themselves.
class SampleMatrix {
public:
    explicit SampleMatrix(RowMatrix values);
    explicit SampleMatrix(const Eigen::MatrixXd& values);

    [[nodiscard]] Index rows() const noexcept { return static_cast<Index>(values_.rows()); }
    [[nodiscard]] Index cols() const noexcept { return static_cast<Index>(values_.cols()); }

    [[nodiscard]] std::span<const double> row(Index q) const noexcept {
        return {values_.data() + q * cols(), cols()};
    }

    [[nodiscard]] double operator()(Index q, Index i) const noexcept {
        return values_(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(i));
    }

    [[nodiscard]] const RowMatrix& values() const noexcept { return values_; }

private:
    RowMatrix values_;
};

}  // namespace edgetest
