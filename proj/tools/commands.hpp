#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "effidx/index.hpp"
#include "effidx/synthgen.hpp"

namespace effidx::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

struct RunConfig {
    std::filesystem::path input_dir;
    std::filesystem::path manifest_path;  // empty: every asset is "ungrouped"
    std::filesystem::path output_dir{"effidx-out"};
    double bandwidth_exponent = 0.6;
    int apen_embedding = 2;
    double apen_tolerance = 0.2;
    bool emit_svg = false;
    unsigned threads = 0;  // 0: hardware concurrency
};

struct AnalyzeResult {
    int exit_code = kExitOk;
    std::vector<EfficiencyReport> reports;  // ranked
    std::vector<std::string> failed;        // symbols excluded with a warning
};

/// Analyzes every `*.csv` in cfg.input_dir and writes report.csv and
/// report.json to cfg.output_dir. Per-asset failures go to `diag` as
/// `WARN <symbol> <reason>` lines.
AnalyzeResult cmd_analyze(const RunConfig& cfg, std::ostream& diag);

/// rank.csv and contributions.csv (+ ei_ranking.svg, contributions.svg,
/// contributions_by_group.svg).
int cmd_rank(const RunConfig& cfg, std::ostream& diag);

/// groups.csv (+ groups.svg).
int cmd_groups(const RunConfig& cfg, std::ostream& diag);

/// scatter.csv with a trailing `#fit,<slope>,<intercept>` row (+ scatter.svg).
int cmd_scatter(const RunConfig& cfg, std::ostream& diag);

/// Writes an ingest-format price CSV; prints the seed used to `info`.
int cmd_synth(const synth::GeneratorSpec& spec, const std::filesystem::path& out, std::ostream& info,
              std::ostream& diag);

/// `input` may name report.csv directly or a directory containing it.
std::filesystem::path resolve_report(const std::filesystem::path& input);

}  // namespace effidx::app
