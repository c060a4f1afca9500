#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spider/core.hpp"
#include "spider/stats.hpp"

namespace spider::harness {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::vector<std::string> functions;   // benchmark ids
    std::vector<std::string> algorithms;  // subset of {sso, pso, abc}
    std::size_t runs = 30;
    std::size_t iterations = 1000;
    std::size_t population = 50;
    double pf = 0.7;
    std::uint64_t base_seed = 1;
    std::filesystem::path output_dir = "campaign";
};

/// All 19 functions, all three algorithms, 30 runs of 1000 iterations
/// with population 50 and pf 0.7.
ExperimentConfig default_config();

/// Applies one key=value option. Keys match the CLI flag names
/// (functions, algorithms, runs, iterations, population, pf, seed, out);
/// anything else raises ConfigError. Value errors name the offender.
void apply_option(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Flat key = value file; '#' starts a comment.
ExperimentConfig parse_config_file(const std::filesystem::path& path,
                                   ExperimentConfig base = default_config());

void validate(const ExperimentConfig& cfg);

/// Stable hex digest of the experiment-defining fields (the output
/// directory is not part of the experiment identity).
std::string config_digest(const ExperimentConfig& cfg);

/// Decimal text with 17 significant digits (round-trips doubles exactly).
std::string format_number(double value);

struct CellResult {
    std::vector<double> final_bests;  // ordered by run index
    stats::RunSummary summary;
};

struct CampaignResult {
    ExperimentConfig config;
    std::map<std::pair<std::string, std::string>, CellResult> cells;  // (function, algorithm)
    std::map<std::pair<std::string, std::string>, double> pvalues;    // (function, pair id)
};

enum class Execution { Serial, Parallel };

/// One run of `algorithm` on `spec` under the campaign parameters.
RunRecord run_single(const ObjectiveSpec& spec, const std::string& algorithm,
                     const ExperimentConfig& cfg, std::uint64_t seed);

/// Executes the functions x algorithms x runs grid (run k uses seed
/// base_seed + k), writes traces/<function>_<algorithm>_<run>.csv,
/// summary.csv and pvalues.csv under output_dir, and returns the
/// aggregate. Output is identical for both execution modes.
CampaignResult run_campaign(const ExperimentConfig& cfg, Execution mode = Execution::Parallel);

/// Header comments (one '#' line each), then "iteration,best_so_far" and
/// one row per iteration; a zero-iteration record emits its initial best
/// as iteration 0.
void write_convergence_csv(const RunRecord& record, std::ostream& out,
                           std::span<const std::string> header_comments = {});

}  // namespace spider::harness
