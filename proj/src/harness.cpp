#include "spider/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <unistd.h>

#include "spider/baselines.hpp"
#include "spider/benchmarks.hpp"
#include "spider/sso.hpp"

namespace spider::harness {
namespace {

const std::vector<std::string> kAlgorithmIds = {"sso", "pso", "abc"};

std::string join(const std::vector<std::string>& items, char sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        // trim surrounding blanks
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos) continue;
        out.push_back(item.substr(first, last - first + 1));
    }
    return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    std::uint64_t parsed = 0;
    try {
        parsed = std::stoull(value, &used);
    } catch (const std::exception&) {
        throw ConfigError("option '" + key + "' expects a non-negative integer, got '" +
                          value + "'");
    }
    if (used != value.size())
        throw ConfigError("option '" + key + "' expects a non-negative integer, got '" +
                          value + "'");
    return parsed;
}

double parse_real(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double parsed = 0.0;
    try {
        parsed = std::stod(value, &used);
    } catch (const std::exception&) {
        throw ConfigError("option '" + key + "' expects a real number, got '" + value + "'");
    }
    if (used != value.size())
        throw ConfigError("option '" + key + "' expects a real number, got '" + value + "'");
    return parsed;
}

// experiment identity: everything that decides the emitted numbers
std::string canonical_config_text(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "functions=" << join(cfg.functions, ',') << '\n'
        << "algorithms=" << join(cfg.algorithms, ',') << '\n'
        << "runs=" << cfg.runs << '\n'
        << "iterations=" << cfg.iterations << '\n'
        << "population=" << cfg.population << '\n'
        << "pf=" << format_number(cfg.pf) << '\n'
        << "seed=" << cfg.base_seed << '\n';
    return out.str();
}

std::string provenance_line(const ExperimentConfig& cfg) {
    return "config_digest=" + config_digest(cfg) + " base_seed=" + std::to_string(cfg.base_seed);
}

}  // namespace

ExperimentConfig default_config() {
    ExperimentConfig cfg;
    for (const auto& entry : benchmarks::list_functions()) cfg.functions.push_back(entry.id);
    cfg.algorithms = kAlgorithmIds;
    return cfg;
}

void apply_option(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "functions") {
        if (value == "all") {
            cfg.functions.clear();
            for (const auto& entry : benchmarks::list_functions())
                cfg.functions.push_back(entry.id);
            return;
        }
        auto ids = split_list(value);
        if (ids.empty()) throw ConfigError("option 'functions' expects at least one id");
        for (const auto& id : ids)
            if (!benchmarks::is_function_id(id))
                throw ConfigError("unknown function id '" + id + "'");
        cfg.functions = std::move(ids);
    } else if (key == "algorithms") {
        auto ids = split_list(value);
        if (ids.empty()) throw ConfigError("option 'algorithms' expects at least one id");
        for (const auto& id : ids)
            if (std::find(kAlgorithmIds.begin(), kAlgorithmIds.end(), id) ==
                kAlgorithmIds.end())
                throw ConfigError("unknown algorithm id '" + id + "'");
        cfg.algorithms = std::move(ids);
    } else if (key == "runs") {
        const auto parsed = parse_u64(key, value);
        if (parsed < 1) throw ConfigError("option 'runs' must be at least 1");
        cfg.runs = parsed;
    } else if (key == "iterations") {
        cfg.iterations = parse_u64(key, value);
    } else if (key == "population") {
        const auto parsed = parse_u64(key, value);
        if (parsed < 4) throw ConfigError("option 'population' must be at least 4");
        cfg.population = parsed;
    } else if (key == "pf") {
        const double parsed = parse_real(key, value);
        if (!(parsed >= 0.0 && parsed <= 1.0))
            throw ConfigError("option 'pf' must lie in [0,1]");
        cfg.pf = parsed;
    } else if (key == "seed") {
        cfg.base_seed = parse_u64(key, value);
    } else if (key == "out") {
        if (value.empty()) throw ConfigError("option 'out' expects a path");
        cfg.output_dir = value;
    } else {
        throw ConfigError("unknown configuration key '" + key + "'");
    }
}

ExperimentConfig parse_config_file(const std::filesystem::path& path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("malformed line " + std::to_string(lineno) + " in '" +
                              path.string() + "' (expected key = value)");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        apply_option(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return base;
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.functions.empty()) throw ConfigError("no functions configured");
    if (cfg.algorithms.empty()) throw ConfigError("no algorithms configured");
    for (const auto& id : cfg.functions)
        if (!benchmarks::is_function_id(id))
            throw ConfigError("unknown function id '" + id + "'");
    for (const auto& id : cfg.algorithms)
        if (std::find(kAlgorithmIds.begin(), kAlgorithmIds.end(), id) == kAlgorithmIds.end())
            throw ConfigError("unknown algorithm id '" + id + "'");
    if (cfg.runs < 1) throw ConfigError("runs must be at least 1");
    if (cfg.population < 4) throw ConfigError("population must be at least 4");
    if (!(cfg.pf >= 0.0 && cfg.pf <= 1.0)) throw ConfigError("pf must lie in [0,1]");
}

std::string config_digest(const ExperimentConfig& cfg) {
    // FNV-1a, fixed width so the digest is stable across platforms
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : canonical_config_text(cfg)) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

RunRecord run_single(const ObjectiveSpec& spec, const std::string& algorithm,
                     const ExperimentConfig& cfg, std::uint64_t seed) {
    if (algorithm == "sso") {
        sso::SsoParams p;
        p.population_size = cfg.population;
        p.max_iterations = cfg.iterations;
        p.pf = cfg.pf;
        p.seed = seed;
        return sso::run(spec, p);
    }
    if (algorithm == "pso") {
        baselines::PsoParams p;
        p.population_size = cfg.population;
        p.max_iterations = cfg.iterations;
        p.seed = seed;
        return baselines::pso_run(spec, p);
    }
    if (algorithm == "abc") {
        baselines::AbcParams p;
        p.colony_size = cfg.population;
        p.max_iterations = cfg.iterations;
        p.seed = seed;
        return baselines::abc_run(spec, p);
    }
    throw ConfigError("unknown algorithm id '" + algorithm + "'");
}

void write_convergence_csv(const RunRecord& record, std::ostream& out,
                           std::span<const std::string> header_comments) {
    for (const auto& line : header_comments) out << "# " << line << '\n';
    out << "iteration,best_so_far\n";
    if (record.best_so_far_trace.empty()) {
        out << "0," << format_number(record.best_fitness) << '\n';
        return;
    }
    for (std::size_t k = 0; k < record.best_so_far_trace.size(); ++k)
        out << (k + 1) << ',' << format_number(record.best_so_far_trace[k]) << '\n';
}

CampaignResult run_campaign(const ExperimentConfig& cfg, Execution mode) {
    validate(cfg);

    const std::size_t n_functions = cfg.functions.size();
    const std::size_t n_algorithms = cfg.algorithms.size();
    const std::size_t total = n_functions * n_algorithms * cfg.runs;

    // resolve objectives up front; cells only read them
    std::vector<const ObjectiveSpec*> specs(n_functions);
    for (std::size_t fi = 0; fi < n_functions; ++fi)
        specs[fi] = &benchmarks::find_function(cfg.functions[fi]).spec;

    std::vector<RunRecord> records(total);
    std::vector<std::string> failures(total);
    std::atomic<std::size_t> done{0};
    const bool show_progress = isatty(fileno(stderr)) != 0;

    auto execute = [&](std::size_t t) {
        const std::size_t run_idx = t % cfg.runs;
        const std::size_t ai = (t / cfg.runs) % n_algorithms;
        const std::size_t fi = t / (cfg.runs * n_algorithms);
        try {
            records[t] = run_single(*specs[fi], cfg.algorithms[ai], cfg,
                                    cfg.base_seed + run_idx);
        } catch (const std::exception& err) {
            failures[t] = cfg.functions[fi] + "/" + cfg.algorithms[ai] + " run " +
                          std::to_string(run_idx) + ": " + err.what();
        }
        const std::size_t finished = ++done;
        if (show_progress)
            std::fprintf(stderr, "\r[%zu/%zu] %s %s run %zu        ", finished, total,
                         cfg.functions[fi].c_str(), cfg.algorithms[ai].c_str(), run_idx);
    };

    if (mode == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long t = 0; t < static_cast<long long>(total); ++t)
            execute(static_cast<std::size_t>(t));
    } else {
        for (std::size_t t = 0; t < total; ++t) execute(t);
    }
    if (show_progress) std::fprintf(stderr, "\n");

    for (const auto& failure : failures)
        if (!failure.empty()) throw std::runtime_error("campaign cell failed: " + failure);

    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir / "traces");
    const std::string provenance = provenance_line(cfg);

    CampaignResult result;
    result.config = cfg;

    for (std::size_t fi = 0; fi < n_functions; ++fi) {
        for (std::size_t ai = 0; ai < n_algorithms; ++ai) {
            CellResult cell;
            cell.final_bests.reserve(cfg.runs);
            for (std::size_t k = 0; k < cfg.runs; ++k) {
                const std::size_t t = (fi * n_algorithms + ai) * cfg.runs + k;
                const RunRecord& record = records[t];
                cell.final_bests.push_back(record.best_fitness);

                const fs::path trace_path =
                    cfg.output_dir / "traces" /
                    (cfg.functions[fi] + "_" + cfg.algorithms[ai] + "_" + std::to_string(k) +
                     ".csv");
                std::ofstream out(trace_path);
                if (!out)
                    throw std::runtime_error("cannot write trace file '" +
                                             trace_path.string() + "'");
                const std::vector<std::string> comments = {
                    provenance,
                    "function=" + cfg.functions[fi] + " algorithm=" + cfg.algorithms[ai] +
                        " run=" + std::to_string(k) +
                        " seed=" + std::to_string(cfg.base_seed + k),
                };
                write_convergence_csv(record, out, comments);
            }
            cell.summary = stats::summarize(cell.final_bests);
            result.cells.emplace(std::make_pair(cfg.functions[fi], cfg.algorithms[ai]),
                                 std::move(cell));
        }
    }

    const bool has_sso =
        std::find(cfg.algorithms.begin(), cfg.algorithms.end(), "sso") != cfg.algorithms.end();
    // the rank test needs at least 3 observations per side
    if (has_sso && cfg.runs >= 3) {
        for (const auto& function : cfg.functions) {
            const auto& sso_finals = result.cells.at({function, "sso"}).final_bests;
            for (const std::string other : {"pso", "abc"}) {
                if (std::find(cfg.algorithms.begin(), cfg.algorithms.end(), other) ==
                    cfg.algorithms.end())
                    continue;
                const auto& other_finals = result.cells.at({function, other}).final_bests;
                result.pvalues.emplace(std::make_pair(function, "sso_vs_" + other),
                                       stats::wilcoxon_ranksum(sso_finals, other_finals));
            }
        }
    }

    {
        std::ofstream out(cfg.output_dir / "summary.csv");
        if (!out) throw std::runtime_error("cannot write summary.csv");
        out << "# " << provenance << '\n';
        out << "function,algorithm,ab,mb,sd\n";
        for (const auto& function : cfg.functions) {
            for (const auto& algorithm : cfg.algorithms) {
                const auto& s = result.cells.at({function, algorithm}).summary;
                out << function << ',' << algorithm << ',' << format_number(s.ab) << ','
                    << format_number(s.mb) << ',' << format_number(s.sd) << '\n';
            }
        }
    }
    {
        std::ofstream out(cfg.output_dir / "pvalues.csv");
        if (!out) throw std::runtime_error("cannot write pvalues.csv");
        out << "# " << provenance << '\n';
        out << "function,pair,p\n";
        for (const auto& function : cfg.functions) {
            for (const std::string other : {"pso", "abc"}) {
                const auto it = result.pvalues.find({function, "sso_vs_" + other});
                if (it == result.pvalues.end()) continue;
                out << function << ",sso_vs_" << other << ',' << format_number(it->second)
                    << '\n';
            }
        }
    }

    return result;
}

}  // namespace spider::harness
