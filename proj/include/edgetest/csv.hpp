#pragma once

#include "edgetest/sample_matrix.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace edgetest {

struct CsvOptions {
    char delimiter = ',';
    bool has_header = false;
};

/// Rows are observations, columns are variates. Numbers use a decimal point
/// regardless of locale. Blank lines are skipped. Throws ParseError with the
/// 1-based line number on a bad field or a ragged row.
struct CsvTable {
    std::vector<std::string> header;
    SampleMatrix data;
};

[[nodiscard]] CsvTable read_csv(std::istream& in, const CsvOptions& options = {});
[[nodiscard]] CsvTable read_csv_file(const std::filesystem::path& path, const CsvOptions& options = {});

}  // namespace edgetest
