// Command-line front end: seeded optimization campaigns over the benchmark
// registry, single-run traces, and the registry listing. Machine-readable
// output goes to stdout; progress goes to stderr.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spider/benchmarks.hpp"
#include "spider/harness.hpp"

namespace {

using spider::harness::ExperimentConfig;

struct RawOptions {
    std::string config_path;
    std::string functions;
    std::string algorithms;
    std::string runs;
    std::string iterations;
    std::string population;
    std::string pf;
    std::string seed;
    std::string out;
};

// precedence: defaults, then the config file, then explicit flags
ExperimentConfig resolve_config(const CLI::App& cmd, const RawOptions& raw) {
    ExperimentConfig cfg = spider::harness::default_config();
    if (cmd.count("--config")) cfg = spider::harness::parse_config_file(raw.config_path, cfg);
    const std::pair<const char*, const std::string*> flags[] = {
        {"functions", &raw.functions}, {"algorithms", &raw.algorithms},
        {"runs", &raw.runs},           {"iterations", &raw.iterations},
        {"population", &raw.population}, {"pf", &raw.pf},
        {"seed", &raw.seed},           {"out", &raw.out},
    };
    for (const auto& [key, value] : flags)
        if (cmd.count(std::string("--") + key))
            spider::harness::apply_option(cfg, key, *value);
    spider::harness::validate(cfg);
    return cfg;
}

void add_campaign_flags(CLI::App& cmd, RawOptions& raw) {
    cmd.add_option("--functions", raw.functions, "comma-separated ids or 'all'");
    cmd.add_option("--algorithms", raw.algorithms, "subset of sso,pso,abc");
    cmd.add_option("--runs", raw.runs, "independent runs per cell");
    cmd.add_option("--iterations", raw.iterations, "iterations per run");
    cmd.add_option("--population", raw.population, "population size");
    cmd.add_option("--pf", raw.pf, "attraction threshold");
    cmd.add_option("--seed", raw.seed, "base seed; run k uses seed+k");
    cmd.add_option("--out", raw.out, "output directory");
}

int command_run(const CLI::App& cmd, const RawOptions& raw) {
    const ExperimentConfig cfg = resolve_config(cmd, raw);
    const auto result = spider::harness::run_campaign(cfg);

    // echo the summary for pipelines; the same table is in summary.csv
    std::cout << "function,algorithm,ab,mb,sd\n";
    for (const auto& function : cfg.functions) {
        for (const auto& algorithm : cfg.algorithms) {
            const auto& s = result.cells.at({function, algorithm}).summary;
            std::cout << function << ',' << algorithm << ','
                      << spider::harness::format_number(s.ab) << ','
                      << spider::harness::format_number(s.mb) << ','
                      << spider::harness::format_number(s.sd) << '\n';
        }
    }
    std::fprintf(stderr, "campaign written to %s\n", cfg.output_dir.string().c_str());
    return 0;
}

int command_list_functions() {
    std::cout << "id,name,dimension,low,high,optimum\n";
    for (const auto& entry : spider::benchmarks::list_functions()) {
        std::cout << entry.id << ',' << entry.name << ',' << entry.spec.dimension << ','
                  << spider::harness::format_number(entry.spec.bounds.low()[0]) << ','
                  << spider::harness::format_number(entry.spec.bounds.high()[0]) << ','
                  << spider::harness::format_number(*entry.spec.optimum_value) << '\n';
    }
    return 0;
}

int command_single(const CLI::App& cmd, const RawOptions& raw, const std::string& function,
                   const std::string& algorithm, std::uint64_t seed) {
    ExperimentConfig cfg = spider::harness::default_config();
    const std::pair<const char*, const std::string*> flags[] = {
        {"iterations", &raw.iterations},
        {"population", &raw.population},
        {"pf", &raw.pf},
    };
    for (const auto& [key, value] : flags)
        if (cmd.count(std::string("--") + key))
            spider::harness::apply_option(cfg, key, *value);

    if (!spider::benchmarks::is_function_id(function))
        throw spider::harness::ConfigError("unknown function id '" + function + "'");
    const auto& spec = spider::benchmarks::find_function(function).spec;
    const auto record = spider::harness::run_single(spec, algorithm, cfg, seed);

    const std::vector<std::string> comments = {
        "function=" + function + " algorithm=" + algorithm + " seed=" + std::to_string(seed),
    };
    spider::harness::write_convergence_csv(record, std::cout, comments);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"social spider optimization library and experiment harness"};
    app.require_subcommand(1);

    RawOptions raw;

    CLI::App* run_cmd = app.add_subcommand("run", "execute a multi-seed campaign");
    run_cmd->add_option("--config", raw.config_path, "key = value configuration file")
        ->check(CLI::ExistingFile);
    add_campaign_flags(*run_cmd, raw);

    app.add_subcommand("list-functions", "print the benchmark registry");

    CLI::App* single_cmd =
        app.add_subcommand("single", "run one trial and print its convergence trace");
    std::string function, algorithm;
    std::uint64_t seed = 0;
    single_cmd->add_option("--function", function, "benchmark id")->required();
    single_cmd->add_option("--algorithm", algorithm, "sso, pso or abc")->required();
    single_cmd->add_option("--seed", seed, "run seed")->required();
    single_cmd->add_option("--iterations", raw.iterations, "iterations");
    single_cmd->add_option("--population", raw.population, "population size");
    single_cmd->add_option("--pf", raw.pf, "attraction threshold");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return command_run(*run_cmd, raw);
        if (app.get_subcommand("list-functions")->parsed()) return command_list_functions();
        if (single_cmd->parsed()) return command_single(*single_cmd, raw, function, algorithm, seed);
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
    return 0;
}
