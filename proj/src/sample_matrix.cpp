#include "edgetest/sample_matrix.hpp"

#include "edgetest/errors.hpp"

#include <utility>

namespace edgetest {

SampleMatrix::SampleMatrix(RowMatrix values) : values_(std::move(values)) {
    if (values_.rows() == 0 || values_.cols() == 0) {
        throw EmptyInputError("sample matrix has no rows or no columns");
    }
    if (!values_.allFinite()) {
        throw ConfigError("sample matrix contains non-finite entries");
    }
}

SampleMatrix::SampleMatrix(const Eigen::MatrixXd& values) : SampleMatrix(RowMatrix(values)) {}

}  // namespace edgetest
