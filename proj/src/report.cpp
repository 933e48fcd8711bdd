#include "edgetest/report.hpp"

#include "json.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace edgetest {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void ExperimentReport::append(const ExperimentReport& other) {
    rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
}

std::vector<ReportRow> ExperimentReport::select(std::string_view metric, std::string_view param,
                                                std::optional<Index> n) const {
    std::vector<ReportRow> out;
    for (const auto& r : rows_) {
        if (!metric.empty() && r.metric != metric) continue;
        if (!param.empty() && r.param != param) continue;
        if (n && r.n != *n) continue;
        out.push_back(r);
    }
    return out;
}

void ExperimentReport::write_csv(std::ostream& out) const {
    out << "kind,param,n,p,delta,metric,value,se\n";
    for (const auto& r : rows_) {
        out << r.kind << ',' << r.param << ',' << r.n << ',' << r.p << ',' << format_double(r.delta)
            << ',' << r.metric << ',' << format_double(r.value) << ',' << format_double(r.se) << '\n';
    }
}

namespace {

nlohmann::json number_or_tag(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

}  // namespace

void ExperimentReport::write_json(std::ostream& out) const {
    auto rows = nlohmann::json::array();
    for (const auto& r : rows_) {
        rows.push_back({{"kind", r.kind},
                        {"param", r.param},
                        {"n", r.n},
                        {"p", r.p},
                        {"delta", number_or_tag(r.delta)},
                        {"metric", r.metric},
                        {"value", number_or_tag(r.value)},
                        {"se", number_or_tag(r.se)}});
    }
    out << rows.dump(2) << '\n';
}

}  // namespace edgetest
