#include "edgetest/csv.hpp"

#include "edgetest/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string_view>

namespace edgetest {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(delimiter, start);
        fields.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return fields;
}

double parse_number(std::string_view field, std::size_t line_no, std::size_t column) {
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
        throw ParseError("line " + std::to_string(line_no) + ", column " + std::to_string(column + 1) +
                             ": cannot parse '" + std::string(field) + "' as a number",
                         line_no);
    }
    if (!std::isfinite(value)) {
        throw ParseError("line " + std::to_string(line_no) + ", column " + std::to_string(column + 1) +
                             ": non-finite value",
                         line_no);
    }
    return value;
}

}  // namespace

CsvTable read_csv(std::istream& in, const CsvOptions& options) {
    std::vector<std::string> header;
    std::vector<double> values;
    std::size_t width = 0;
    std::size_t rows = 0;
    std::size_t line_no = 0;
    bool header_pending = options.has_header;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split(line, options.delimiter);
        if (header_pending) {
            for (auto f : fields) header.emplace_back(f);
            width = fields.size();
            header_pending = false;
            continue;
        }
        if (width == 0) width = fields.size();
        if (fields.size() != width) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                                 " fields, found " + std::to_string(fields.size()),
                             line_no);
        }
        for (std::size_t c = 0; c < fields.size(); ++c) values.push_back(parse_number(fields[c], line_no, c));
        ++rows;
    }
    if (in.bad()) throw ParseError("read failure", line_no);
    if (rows == 0) throw ParseError("no data rows", 0);

    RowMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(width));
    std::copy(values.begin(), values.end(), m.data());
    return {std::move(header), SampleMatrix(std::move(m))};
}

CsvTable read_csv_file(const std::filesystem::path& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
    return read_csv(in, options);
}

}  // namespace edgetest
