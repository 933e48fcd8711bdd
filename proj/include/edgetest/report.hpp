#pragma once

#include "edgetest/sample_matrix.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace edgetest {

/// One measured quantity of a simulation run. `se` is the Monte-Carlo
/// standard error over repetitions (0 for exact quantities).
struct ReportRow {
    std::string kind;
    std::string param;
    Index n = 0;
    Index p = 0;
    double delta = 0.0;
    std::string metric;
    double value = 0.0;
    double se = 0.0;

    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

class ExperimentReport {
public:
    void add(ReportRow row) { rows_.push_back(std::move(row)); }
    void append(const ExperimentReport& other);

    [[nodiscard]] const std::vector<ReportRow>& rows() const noexcept { return rows_; }

    /// Rows matching every non-empty filter field.
    [[nodiscard]] std::vector<ReportRow> select(std::string_view metric,
                                                std::string_view param = {},
                                                std::optional<Index> n = std::nullopt) const;

    /// Header `kind,param,n,p,delta,metric,value,se`; doubles in shortest
    /// round-trip form, `inf`/`nan` for non-finite values.
    void write_csv(std::ostream& out) const;

    /// Array of row objects with the same field names. Non-finite values are
    /// written as the strings "inf", "-inf" or "nan".
    void write_json(std::ostream& out) const;

    friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;

private:
    std::vector<ReportRow> rows_;
};

/// Shortest decimal string that parses back to the same double.
[[nodiscard]] std::string format_double(double v);

}  // namespace edgetest
