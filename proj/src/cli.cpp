#include "edgetest/cli.hpp"

#include "edgetest/covcov.hpp"
#include "edgetest/csv.hpp"
#include "edgetest/errors.hpp"
#include "edgetest/report.hpp"
#include "edgetest/threshold.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>

namespace edgetest {

using nlohmann::json;

BoundMode parse_bound_mode(std::string_view s) {
    if (s == "eig") return BoundMode::Eig;
    if (s == "trace") return BoundMode::Trace;
    if (s == "both") return BoundMode::Both;
    throw ConfigError("bound must be eig, trace or both");
}

OutputFormat parse_output_format(std::string_view s) {
    if (s == "json") return OutputFormat::Json;
    if (s == "csv") return OutputFormat::Csv;
    throw ConfigError("format must be json or csv");
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot open '" + tmp.string() + "' for writing");
        f << content;
        f.flush();
        if (!f) throw Error("write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error("cannot rename output into '" + path.string() + "'");
    }
}

namespace {

void emit(const std::filesystem::path& path, const std::string& content, std::ostream& out) {
    if (path.empty()) {
        out << content;
    } else {
        write_file_atomic(path, content);
    }
}

json matrix_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
        rows.push_back(std::move(r));
    }
    return rows;
}

json bool_matrix_json(const BoolMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(static_cast<bool>(m(i, j)));
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<BoundKind> bounds_of(BoundMode mode) {
    switch (mode) {
        case BoundMode::Eig: return {BoundKind::Eig};
        case BoundMode::Trace: return {BoundKind::Trace};
        case BoundMode::Both: break;
    }
    return {BoundKind::Eig, BoundKind::Trace};
}

std::string_view to_string(BoundMode mode) {
    switch (mode) {
        case BoundMode::Eig: return "eig";
        case BoundMode::Trace: return "trace";
        case BoundMode::Both: break;
    }
    return "both";
}

CsvTable load(const CliConfig& config) {
    if (config.input.empty()) throw ConfigError("an input file is required");
    return read_csv_file(config.input, {config.delimiter, config.has_header});
}

// Maps library errors to exit codes; `body` returns the success code.
template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        err << "error: parse: " << e.what() << '\n';
        return kExitParse;
    } catch (const SingularCovarianceError& e) {
        err << "error: singular covariance: " << e.what() << '\n';
        return kExitSingular;
    } catch (const ConfigError& e) {
        err << "error: usage: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

std::string test_json(const CliConfig& config, const Analysis& analysis, const std::vector<TestResult>& results) {
    json doc;
    doc["n"] = analysis.n;
    doc["p"] = analysis.p;
    doc["delta"] = config.delta;
    doc["mu"] = config.mu;
    doc["bound"] = std::string(to_string(config.bound));
    doc["warnings"] = analysis.warnings;
    doc["theta_hat"] = matrix_json(analysis.precision.theta);
    doc["diagnostics"] = {
        {"lambda_max", analysis.lambda_max ? json(*analysis.lambda_max) : json(nullptr)},
        {"trace", analysis.trace},
        {"smallest_eigenvalue", analysis.covariance.smallest_eigenvalue()},
        {"largest_eigenvalue", analysis.covariance.largest_eigenvalue()},
    };
    json tests = json::array();
    for (const auto& r : results) {
        json t;
        t["bound"] = std::string(to_string(r.bound));
        t["epsilon"] = r.epsilon;
        t["threshold"] = r.infinite() ? json("infinite") : json(r.threshold);
        t["adjacency"] = bool_matrix_json(r.decisions);
        t["edge_count"] = r.edge_count();
        json edges = json::array();
        const auto p = static_cast<Eigen::Index>(analysis.p);
        for (Eigen::Index i = 0; i < p; ++i) {
            for (Eigen::Index j = i + 1; j < p; ++j) {
                edges.push_back({{"i", i},
                                 {"j", j},
                                 {"abs_theta", std::abs(r.theta_hat.theta(i, j))},
                                 {"edge", static_cast<bool>(r.decisions(i, j))}});
            }
        }
        t["edges"] = std::move(edges);
        json loops = json::array();
        for (Eigen::Index i = 0; i < r.self_loops.size(); ++i) loops.push_back(static_cast<bool>(r.self_loops(i)));
        t["self_loops"] = std::move(loops);
        tests.push_back(std::move(t));
    }
    doc["tests"] = std::move(tests);
    return doc.dump(2) + "\n";
}

std::string test_csv(const Analysis& analysis, const std::vector<TestResult>& results) {
    std::ostringstream out;
    out << "bound,i,j,abs_theta,edge,threshold,epsilon\n";
    const auto p = static_cast<Eigen::Index>(analysis.p);
    for (const auto& r : results) {
        const std::string threshold = r.infinite() ? "infinite" : format_double(r.threshold);
        for (Eigen::Index i = 0; i < p; ++i) {
            for (Eigen::Index j = i + 1; j < p; ++j) {
                out << to_string(r.bound) << ',' << i << ',' << j << ','
                    << format_double(std::abs(r.theta_hat.theta(i, j))) << ','
                    << (r.decisions(i, j) ? "true" : "false") << ',' << threshold << ','
                    << format_double(r.epsilon) << '\n';
            }
        }
    }
    return out.str();
}

}  // namespace

int cmd_test(const CliConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        TestConfig base{config.delta, config.mu, BoundKind::Eig, config.include_diagonal};
        base.validate();
        const auto table = load(config);
        const auto& x = table.data;
        if (x.rows() <= x.cols()) {
            err << "warning: n = " << x.rows() << " does not exceed p = " << x.cols()
                << "; the covariance estimate is likely singular\n";
        }
        const auto scope = config.bound == BoundMode::Trace ? AnalysisScope::DiagonalOnly : AnalysisScope::Full;
        const Analysis analysis = analyze(x, scope);
        std::vector<TestResult> results;
        for (BoundKind kind : bounds_of(config.bound)) {
            TestConfig c = base;
            c.bound = kind;
            results.push_back(decide(analysis, c));
            if (results.back().infinite()) {
                err << "warning: " << to_string(kind)
                    << " bound reaches the smallest covariance eigenvalue; threshold is infinite\n";
            }
        }
        for (const auto& w : analysis.warnings) err << "warning: " << w << '\n';
        emit(config.output,
             config.format == OutputFormat::Json ? test_json(config, analysis, results) : test_csv(analysis, results),
             out);
        return kExitOk;
    });
}

int cmd_covcov(const CliConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto table = load(config);
        const auto c = covcov_from_data(table.data);
        const double lambda_max = covcov_max_eigenvalue(c);
        const double trace = covcov_trace(c);
        if (config.format == OutputFormat::Csv) {
            std::ostringstream body;
            write_covcov_csv(body, c);
            emit(config.output, body.str(), out);
            err << "lambda_max," << format_double(lambda_max) << '\n' << "trace," << format_double(trace) << '\n';
            return kExitOk;
        }
        json doc;
        doc["n"] = table.data.rows();
        doc["p"] = c.variates();
        json pairs = json::array();
        for (Index k = 0; k < c.size(); ++k) {
            const auto [i, j] = c.pair_of(k);
            pairs.push_back({i, j});
        }
        doc["pairs"] = std::move(pairs);
        doc["matrix"] = matrix_json(c.values());
        doc["lambda_max"] = lambda_max;
        doc["trace"] = trace;
        emit(config.output, doc.dump(2) + "\n", out);
        return kExitOk;
    });
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"threshold", "fpr", "power", "weyl"};
    return names;
}

std::vector<PresetRun> preset_runs(const CliConfig& config) {
    std::vector<PresetRun> runs;
    ExperimentSpec base;
    const auto both = {Distribution::Gaussian, Distribution::Laplace};
    if (config.preset == "threshold") {
        base.n_grid = {10000, 20000, 40000, 100000, 400000, 1000000};
        base.repetitions = 20;
        runs.push_back({ExperimentKind::Threshold, base});
    } else if (config.preset == "fpr") {
        base.n_grid = {100000};
        base.repetitions = 100;
        base.delta_grid = {0.01, 0.025, 0.05, 0.1, 0.2};
        for (auto d : both) {
            base.distribution = d;
            runs.push_back({ExperimentKind::Fpr, base});
        }
    } else if (config.preset == "power") {
        base.n_grid = {2000, 5000, 10000, 20000, 50000, 100000};
        base.repetitions = 100;
        for (auto d : both) {
            base.distribution = d;
            runs.push_back({ExperimentKind::Power, base});
        }
    } else if (config.preset == "weyl") {
        base.n_grid = {100000, 500000};
        base.repetitions = 200;
        for (Index p : {Index{6}, Index{8}}) {
            base.p = p;
            runs.push_back({ExperimentKind::Weyl, base});
        }
    } else {
        throw ConfigError("unknown preset '" + config.preset + "'");
    }

    std::vector<PresetRun> out;
    for (auto run : runs) {
        auto& s = run.spec;
        if (config.seed) s.seed = *config.seed;
        if (config.repetitions) s.repetitions = *config.repetitions;
        if (config.p) s.p = *config.p;
        if (!config.n_grid.empty()) s.n_grid = config.n_grid;
        if (config.distribution) s.distribution = *config.distribution;
        const bool duplicate = std::any_of(out.begin(), out.end(), [&](const PresetRun& o) {
            return o.kind == run.kind && o.spec.p == s.p && o.spec.distribution == s.distribution;
        });
        if (!duplicate) {
            s.validate();
            out.push_back(run);
        }
    }
    return out;
}

ExperimentReport run_experiment(const PresetRun& run) {
    switch (run.kind) {
        case ExperimentKind::Threshold: return run_threshold_experiment(run.spec);
        case ExperimentKind::Fpr: return run_fpr_experiment(run.spec);
        case ExperimentKind::Power: return run_power_experiment(run.spec);
        case ExperimentKind::Weyl: break;
    }
    return run_weyl_experiment(run.spec);
}

int cmd_simulate(const CliConfig& config, std::ostream& out, std::ostream& err) {
    std::vector<PresetRun> runs;
    try {
        runs = preset_runs(config);
    } catch (const ConfigError& e) {
        err << "error: usage: " << e.what() << "\n"
            << "usage: edgetest simulate --preset {";
        for (std::size_t k = 0; k < preset_names().size(); ++k) err << (k ? "|" : "") << preset_names()[k];
        err << "} [--seed S] [--reps R] [--p P] [--n N,...] [--dist gaussian|laplace] [--output PREFIX]\n";
        return kExitUsage;
    }
    return guarded(err, [&] {
        ExperimentReport report;
        for (const auto& run : runs) report.append(run_experiment(run));
        std::ostringstream csv;
        report.write_csv(csv);
        if (config.output.empty()) {
            if (config.format == OutputFormat::Json) {
                report.write_json(out);
            } else {
                out << csv.str();
            }
            return kExitOk;
        }
        std::ostringstream js;
        report.write_json(js);
        auto csv_path = config.output;
        csv_path += ".csv";
        auto json_path = config.output;
        json_path += ".json";
        write_file_atomic(csv_path, csv.str());
        write_file_atomic(json_path, js.str());
        return kExitOk;
    });
}

}  // namespace edgetest
