#include "doctest.h"

#include "edgetest/cli.hpp"
#include "edgetest/covcov.hpp"
#include "edgetest/csv.hpp"
#include "edgetest/simulate.hpp"
#include "edgetest/threshold.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdlib>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace edgetest;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    const auto dir = fs::temp_directory_path() / "edgetest_cli_tests";
    fs::create_directories(dir);
    return dir;
}

fs::path write_sample(const std::string& name, const Eigen::MatrixXd& sigma, Index n, std::uint64_t seed) {
    auto rng = make_rng(seed, {});
    const auto x = sample_gaussian(sigma, n, rng);
    const auto path = scratch_dir() / name;
    std::ofstream f(path);
    f.precision(17);
    for (Index q = 0; q < x.rows(); ++q) {
        for (Index i = 0; i < x.cols(); ++i) f << (i ? "," : "") << x(q, i);
        f << '\n';
    }
    return path;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("test command on a null sample") {
    CliConfig config;
    config.input = write_sample("null6.csv", Eigen::MatrixXd::Identity(6, 6), 100000, 1);
    config.bound = BoundMode::Both;
    std::ostringstream out, err;
    REQUIRE(cmd_test(config, out, err) == kExitOk);
    const auto doc = nlohmann::json::parse(out.str());
    CHECK(doc["n"] == 100000);
    CHECK(doc["p"] == 6);
    REQUIRE(doc["tests"].size() == 2);
    for (const auto& t : doc["tests"]) {
        CHECK(t["edge_count"] == 0);
        CHECK(t["edges"].size() == 15);
        for (const auto& row : t["adjacency"])
            for (const auto& v : row) CHECK(v == false);
    }
}

TEST_CASE("json output round-trips threshold, epsilon and adjacency") {
    Eigen::MatrixXd theta = Eigen::MatrixXd::Identity(4, 4);
    theta(0, 1) = theta(1, 0) = 0.6;
    CliConfig config;
    config.input = write_sample("edge4.csv", theta.inverse(), 50000, 2);
    config.bound = BoundMode::Both;
    std::ostringstream out, err;
    REQUIRE(cmd_test(config, out, err) == kExitOk);
    const auto doc = nlohmann::json::parse(out.str());

    const auto table = read_csv_file(config.input);
    const auto analysis = analyze(table.data);
    for (const auto& t : doc["tests"]) {
        const BoundKind kind = t["bound"] == "eig" ? BoundKind::Eig : BoundKind::Trace;
        const auto r = decide(analysis, {0.05, 1.0, kind, false});
        CHECK(t["epsilon"].get<double>() == r.epsilon);
        if (r.infinite()) {
            CHECK(t["threshold"] == "infinite");
        } else {
            CHECK(t["threshold"].get<double>() == r.threshold);
        }
        for (Eigen::Index i = 0; i < 4; ++i)
            for (Eigen::Index j = 0; j < 4; ++j)
                CHECK(t["adjacency"][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].get<bool>() ==
                      r.decisions(i, j));
    }
    CHECK(doc["tests"][0]["adjacency"][0][1] == true);
}

TEST_CASE("csv output and file output") {
    CliConfig config;
    config.input = write_sample("small.csv", Eigen::MatrixXd::Identity(3, 3), 500, 3);
    config.format = OutputFormat::Csv;
    config.output = scratch_dir() / "result.csv";
    std::ostringstream out, err;
    REQUIRE(cmd_test(config, out, err) == kExitOk);
    CHECK(out.str().empty());
    const auto text = slurp(config.output);
    CHECK(text.rfind("bound,i,j,abs_theta,edge,threshold,epsilon\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
    CHECK_FALSE(fs::exists(config.output.string() + ".tmp"));
}

TEST_CASE("exit codes") {
    const auto bad = scratch_dir() / "bad.csv";
    std::ofstream(bad) << "1,2\n3,4\n5,x\n";
    CliConfig config;
    config.input = bad;
    std::ostringstream out, err;
    CHECK(cmd_test(config, out, err) == kExitParse);
    CHECK(err.str().find("line 3") != std::string::npos);

    std::ostringstream err2;
    config.input = write_sample("tiny.csv", Eigen::MatrixXd::Identity(6, 6), 5, 4);
    CHECK(cmd_test(config, out, err2) == kExitSingular);
    CHECK(err2.str().find("warning") != std::string::npos);

    config.delta = 1.5;
    CHECK(cmd_test(config, out, err) == kExitUsage);

    CliConfig sim;
    sim.preset = "unknown";
    std::ostringstream err3;
    CHECK(cmd_simulate(sim, out, err3) == kExitUsage);
    CHECK(err3.str().find("usage") != std::string::npos);
}

TEST_CASE("covcov command matches the library") {
    CliConfig config;
    config.input = write_sample("two.csv", Eigen::MatrixXd::Identity(2, 2), 300, 5);
    config.format = OutputFormat::Csv;
    std::ostringstream out, err;
    REQUIRE(cmd_covcov(config, out, err) == kExitOk);
    std::ostringstream expected;
    write_covcov_csv(expected, covcov_from_data(read_csv_file(config.input).data));
    const std::string text = out.str();
    CHECK(text == expected.str());
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
    CHECK(err.str().find("lambda_max,") != std::string::npos);

    config.format = OutputFormat::Json;
    std::ostringstream js;
    REQUIRE(cmd_covcov(config, js, err) == kExitOk);
    const auto doc = nlohmann::json::parse(js.str());
    CHECK(doc["matrix"].size() == 3);
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) CHECK(doc["matrix"][a][b] == doc["matrix"][b][a]);
}

TEST_CASE("simulate presets are deterministic") {
    CliConfig config;
    config.preset = "fpr";
    config.seed = 9;
    config.repetitions = 3;
    config.n_grid = {3000};
    config.output = scratch_dir() / "fpr_a";
    std::ostringstream out, err;
    REQUIRE(cmd_simulate(config, out, err) == kExitOk);
    config.output = scratch_dir() / "fpr_b";
    REQUIRE(cmd_simulate(config, out, err) == kExitOk);
    CHECK(slurp(scratch_dir() / "fpr_a.csv") == slurp(scratch_dir() / "fpr_b.csv"));
    CHECK(slurp(scratch_dir() / "fpr_a.json") == slurp(scratch_dir() / "fpr_b.json"));

    config.preset = "threshold";
    config.output.clear();
    config.format = OutputFormat::Csv;
    std::ostringstream th;
    REQUIRE(cmd_simulate(config, th, err) == kExitOk);
    CHECK(th.str().find(",t_eig,") != std::string::npos);
    CHECK(th.str().find(",t_trace,") != std::string::npos);

    config.preset = "weyl";
    config.p = 4;
    CHECK(preset_runs(config).size() == 1);
}

TEST_CASE("binary maps an unknown preset to exit code 4") {
    const std::string cmd = std::string(EDGETEST_CLI_PATH) + " simulate --preset nonsense 2>/dev/null";
    const int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == kExitUsage);
    const std::string usage = std::string(EDGETEST_CLI_PATH) + " frobnicate 2>/dev/null >/dev/null";
    CHECK(WEXITSTATUS(std::system(usage.c_str())) == kExitUsage);
}
