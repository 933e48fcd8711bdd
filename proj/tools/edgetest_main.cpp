#include "edgetest/cli.hpp"
#include "edgetest/errors.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <string>

namespace {

char delimiter_from(const std::string& s) {
    if (s == "\\t" || s == "tab") return '\t';
    if (s.size() != 1) throw edgetest::ConfigError("delimiter must be a single character");
    return s.front();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conservative edge tests for undirected graphical models"};
    app.require_subcommand(1);

    edgetest::CliConfig config;
    std::string delimiter = ",";
    std::string bound = "eig";
    std::string format;
    std::string input;
    std::string output;
    std::string dist;
    std::uint64_t seed = 0;
    edgetest::Index reps = 0;
    edgetest::Index p = 0;

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("input", input, "CSV file, rows are observations")->required();
        cmd->add_option("-d,--delimiter", delimiter, "Field delimiter (default ',')");
        cmd->add_flag("--header", config.has_header, "First row is a header");
        cmd->add_option("-o,--output", output, "Output file (default stdout)");
    };

    auto* test = app.add_subcommand("test", "Run the edge test on a data file");
    add_input(test);
    test->add_option("--delta", config.delta, "Per-edge significance level in (0,1)");
    test->add_option("--mu", config.mu, "Eigenvalue-to-entry distortion constant");
    test->add_option("--bound", bound, "eig, trace or both");
    test->add_flag("--include-diagonal", config.include_diagonal, "Report self loops in the adjacency");
    test->add_option("--format", format, "json (default) or csv");

    auto* covcov = app.add_subcommand("covcov", "Write the covariance of the covariance estimate");
    add_input(covcov);
    covcov->add_option("--format", format, "csv (default) or json");

    auto* simulate = app.add_subcommand("simulate", "Run a simulation preset");
    simulate->add_option("--preset", config.preset, "threshold, fpr, power or weyl")->required();
    simulate->add_option("--seed", seed, "Master seed");
    simulate->add_option("--reps", reps, "Repetitions");
    simulate->add_option("--p", p, "Number of variates");
    simulate->add_option("--n", config.n_grid, "Sample sizes")->delimiter(',');
    simulate->add_option("--dist", dist, "gaussian or laplace");
    simulate->add_option("-o,--output", output, "Output prefix for .csv and .json (default stdout)");
    simulate->add_option("--format", format, "Format on stdout: csv (default) or json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : edgetest::kExitUsage;
    }

    try {
        config.input = input;
        config.output = output;
        config.delimiter = delimiter_from(delimiter);
        config.bound = edgetest::parse_bound_mode(bound);
        if (simulate->parsed()) {
            if (simulate->count("--seed")) config.seed = seed;
            if (simulate->count("--reps")) config.repetitions = reps;
            if (simulate->count("--p")) config.p = p;
            if (!dist.empty()) config.distribution = edgetest::parse_distribution(dist);
        }
        if (!format.empty()) {
            config.format = edgetest::parse_output_format(format);
        } else {
            config.format = test->parsed() ? edgetest::OutputFormat::Json : edgetest::OutputFormat::Csv;
        }
    } catch (const edgetest::ConfigError& e) {
        std::cerr << "error: usage: " << e.what() << '\n';
        return edgetest::kExitUsage;
    }

    if (test->parsed()) return edgetest::cmd_test(config, std::cout, std::cerr);
    if (covcov->parsed()) return edgetest::cmd_covcov(config, std::cout, std::cerr);
    return edgetest::cmd_simulate(config, std::cout, std::cerr);
}
