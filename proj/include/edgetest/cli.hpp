#pragma once

#include "edgetest/simulate.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace edgetest {

/// Process exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitSingular = 2;
inline constexpr int kExitParse = 3;
inline constexpr int kExitUsage = 4;

enum class BoundMode { Eig, Trace, Both };
enum class OutputFormat { Json, Csv };

[[nodiscard]] BoundMode parse_bound_mode(std::string_view s);
[[nodiscard]] OutputFormat parse_output_format(std::string_view s);

struct CliConfig {
    std::filesystem::path input;
    char delimiter = ',';
    bool has_header = false;
    double delta = 0.05;
    double mu = 1.0;
    BoundMode bound = BoundMode::Eig;
    bool include_diagonal = false;
    OutputFormat format = OutputFormat::Json;
    /// Empty writes to the given stream. For `simulate` this is a path
    /// prefix: `<prefix>.csv` and `<prefix>.json` are written.
    std::filesystem::path output;

    // simulate only
    std::string preset;
    std::optional<std::uint64_t> seed;
    std::optional<Index> repetitions;
    std::optional<Index> p;
    std::vector<Index> n_grid;
    std::optional<Distribution> distribution;
};

enum class ExperimentKind { Threshold, Fpr, Power, Weyl };

struct PresetRun {
    ExperimentKind kind;
    ExperimentSpec spec;
};

[[nodiscard]] const std::vector<std::string>& preset_names();

/// Experiment runs behind a preset name, with the CliConfig overrides
/// applied. Throws ConfigError for an unknown name.
[[nodiscard]] std::vector<PresetRun> preset_runs(const CliConfig& config);

[[nodiscard]] ExperimentReport run_experiment(const PresetRun& run);

/// Each command writes its result to config.output (atomically, via a
/// temporary file and rename) or to `out`, and diagnostics to `err`.
int cmd_test(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_covcov(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Writes `content` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace edgetest
