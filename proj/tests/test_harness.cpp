#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "spider/benchmarks.hpp"
#include "spider/harness.hpp"

using namespace spider;
using namespace spider::harness;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("spider_test_" + tag);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// rows of a CSV file, comments and header stripped
std::vector<std::vector<std::string>> read_rows(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::vector<std::string> fields;
        std::istringstream fields_in(line);
        std::string field;
        while (std::getline(fields_in, field, ',')) fields.push_back(field);
        rows.push_back(std::move(fields));
    }
    return rows;
}

}  // namespace

TEST_CASE("defaults match the reference protocol") {
    const ExperimentConfig cfg = default_config();
    CHECK(cfg.functions.size() == 19);
    CHECK(cfg.algorithms == std::vector<std::string>{"sso", "pso", "abc"});
    CHECK(cfg.runs == 30);
    CHECK(cfg.iterations == 1000);
    CHECK(cfg.population == 50);
    CHECK(cfg.pf == 0.7);
}

TEST_CASE("apply_option parses and validates") {
    ExperimentConfig cfg = default_config();
    apply_option(cfg, "functions", "f1,f3");
    apply_option(cfg, "algorithms", "sso");
    apply_option(cfg, "runs", "5");
    CHECK(cfg.functions == std::vector<std::string>{"f1", "f3"});
    CHECK(cfg.algorithms == std::vector<std::string>{"sso"});
    CHECK(cfg.runs == 5);

    apply_option(cfg, "functions", "all");
    CHECK(cfg.functions.size() == 19);

    CHECK_THROWS_WITH_AS(apply_option(cfg, "functions", "f99"),
                         "unknown function id 'f99'", ConfigError);
    CHECK_THROWS_AS(apply_option(cfg, "algorithms", "annealing"), ConfigError);
    CHECK_THROWS_AS(apply_option(cfg, "runs", "0"), ConfigError);
    CHECK_THROWS_AS(apply_option(cfg, "runs", "three"), ConfigError);
    CHECK_THROWS_AS(apply_option(cfg, "population", "3"), ConfigError);
    CHECK_THROWS_AS(apply_option(cfg, "pf", "1.5"), ConfigError);
    CHECK_THROWS_AS(apply_option(cfg, "mystery", "1"), ConfigError);
}

TEST_CASE("config file values load and flags override them") {
    const fs::path dir = fresh_dir("config");
    fs::create_directories(dir);
    const fs::path file = dir / "experiment.cfg";
    {
        std::ofstream out(file);
        out << "# comment line\n"
            << "functions = f1,f2\n"
            << "runs = 4\n"
            << "population = 10\n";
    }
    ExperimentConfig cfg = parse_config_file(file);
    CHECK(cfg.functions == std::vector<std::string>{"f1", "f2"});
    CHECK(cfg.runs == 4);
    CHECK(cfg.population == 10);
    CHECK(cfg.iterations == 1000);  // untouched default

    apply_option(cfg, "runs", "9");  // flag layering
    CHECK(cfg.runs == 9);

    {
        std::ofstream out(file);
        out << "speed = 11\n";
    }
    CHECK_THROWS_AS(parse_config_file(file), ConfigError);
    {
        std::ofstream out(file);
        out << "just words\n";
    }
    CHECK_THROWS_AS(parse_config_file(file), ConfigError);
    fs::remove_all(dir);
}

TEST_CASE("write_convergence_csv row counts") {
    RunRecord record;
    record.best_fitness = 3.5;
    record.best_so_far_trace = {5.0, 4.0, 4.0, 3.5};
    {
        std::ostringstream out;
        write_convergence_csv(record, out);
        CHECK(out.str() == "iteration,best_so_far\n1,5\n2,4\n3,4\n4,3.5\n");
    }
    {
        RunRecord empty;
        empty.best_fitness = 7.25;
        std::ostringstream out;
        const std::vector<std::string> comments = {"tag=1"};
        write_convergence_csv(empty, out, comments);
        CHECK(out.str() == "# tag=1\niteration,best_so_far\n0,7.25\n");
    }
}

TEST_CASE("small campaign: shape, determinism, self-consistency") {
    ExperimentConfig cfg = default_config();
    cfg.functions = {"f1", "f6"};
    cfg.algorithms = {"sso", "abc"};
    cfg.runs = 3;
    cfg.iterations = 8;
    cfg.population = 8;
    cfg.base_seed = 77;
    cfg.output_dir = fresh_dir("campaignA");

    const CampaignResult first = run_campaign(cfg, Execution::Parallel);
    CHECK(first.cells.size() == 4);
    CHECK(first.pvalues.size() == 2);  // sso_vs_abc per function
    for (const auto& [key, cell] : first.cells) {
        CHECK(cell.final_bests.size() == 3);
        CHECK(cell.summary.n_runs == 3);
    }

    const std::string summary_a = slurp(cfg.output_dir / "summary.csv");
    const std::string pvalues_a = slurp(cfg.output_dir / "pvalues.csv");
    CHECK(summary_a.find("# config_digest=") == 0);

    // trace files: one per run, one row per iteration, monotone column
    for (const auto& function : cfg.functions) {
        for (const auto& algorithm : cfg.algorithms) {
            for (std::size_t k = 0; k < cfg.runs; ++k) {
                const fs::path trace = cfg.output_dir / "traces" /
                                       (function + "_" + algorithm + "_" +
                                        std::to_string(k) + ".csv");
                const auto rows = read_rows(trace);
                REQUIRE(rows.size() == cfg.iterations);
                double previous = std::numeric_limits<double>::infinity();
                for (const auto& row : rows) {
                    REQUIRE(row.size() == 2);
                    const double v = std::stod(row[1]);
                    CHECK(v <= previous);
                    previous = v;
                }
            }
        }
    }

    // summary.csv AB equals the mean of the per-run trace tails
    for (const auto& row : read_rows(cfg.output_dir / "summary.csv")) {
        REQUIRE(row.size() == 5);
        double mean = 0.0;
        for (std::size_t k = 0; k < cfg.runs; ++k) {
            const auto rows = read_rows(cfg.output_dir / "traces" /
                                        (row[0] + "_" + row[1] + "_" + std::to_string(k) +
                                         ".csv"));
            mean += std::stod(rows.back()[1]);
        }
        mean /= static_cast<double>(cfg.runs);
        CHECK(std::stod(row[2]) == doctest::Approx(mean).epsilon(1e-12));
    }

    // byte-identical re-run, and the serial executor emits the same bytes
    cfg.output_dir = fresh_dir("campaignB");
    run_campaign(cfg, Execution::Parallel);
    CHECK(slurp(cfg.output_dir / "summary.csv") == summary_a);
    CHECK(slurp(cfg.output_dir / "pvalues.csv") == pvalues_a);
    fs::remove_all(cfg.output_dir);

    cfg.output_dir = fresh_dir("campaignC");
    run_campaign(cfg, Execution::Serial);
    CHECK(slurp(cfg.output_dir / "summary.csv") == summary_a);
    CHECK(slurp(cfg.output_dir / "pvalues.csv") == pvalues_a);
    fs::remove_all(cfg.output_dir);

    fs::remove_all(fs::temp_directory_path() / "spider_test_campaignA");
}

TEST_CASE("degenerate campaign: one run, zero iterations") {
    ExperimentConfig cfg = default_config();
    cfg.functions = {"f1"};
    cfg.algorithms = {"sso", "pso", "abc"};
    cfg.runs = 1;
    cfg.iterations = 0;
    cfg.population = 6;
    cfg.base_seed = 5;
    cfg.output_dir = fresh_dir("campaignD");

    const CampaignResult result = run_campaign(cfg);
    for (const auto& [key, cell] : result.cells) {
        CHECK(cell.final_bests.size() == 1);
        CHECK(std::isfinite(cell.summary.ab));
        CHECK(cell.summary.sd == 0.0);
    }
    // too few runs for a rank test
    CHECK(result.pvalues.empty());

    const auto rows = read_rows(cfg.output_dir / "traces" / "f1_sso_0.csv");
    REQUIRE(rows.size() == 1);
    CHECK(rows[0][0] == "0");
    fs::remove_all(cfg.output_dir);
}

TEST_CASE("campaign seed policy matches stand-alone runs") {
    ExperimentConfig cfg = default_config();
    cfg.functions = {"f6"};
    cfg.algorithms = {"sso"};
    cfg.runs = 2;
    cfg.iterations = 5;
    cfg.population = 8;
    cfg.base_seed = 40;
    cfg.output_dir = fresh_dir("campaignE");
    run_campaign(cfg);

    const auto& spec = benchmarks::find_function("f6").spec;
    for (std::size_t k = 0; k < cfg.runs; ++k) {
        const RunRecord record = run_single(spec, "sso", cfg, cfg.base_seed + k);
        std::ostringstream expected;
        write_convergence_csv(record, expected);
        const std::string file = slurp(cfg.output_dir / "traces" /
                                       ("f6_sso_" + std::to_string(k) + ".csv"));
        // the file carries two comment lines, then the identical body
        const auto body_at = file.find("iteration,");
        REQUIRE(body_at != std::string::npos);
        CHECK(file.substr(body_at) == expected.str());
    }
    fs::remove_all(cfg.output_dir);
}

TEST_CASE("config digest tracks experiment identity only") {
    ExperimentConfig a = default_config();
    ExperimentConfig b = default_config();
    CHECK(config_digest(a) == config_digest(b));
    b.output_dir = "elsewhere";
    CHECK(config_digest(a) == config_digest(b));
    b.base_seed = 2;
    CHECK(config_digest(a) != config_digest(b));
}

TEST_CASE("run_campaign validates the configuration") {
    ExperimentConfig cfg = default_config();
    cfg.functions = {"f99"};
    CHECK_THROWS_AS(run_campaign(cfg), ConfigError);
    cfg = default_config();
    cfg.algorithms = {};
    CHECK_THROWS_AS(run_campaign(cfg), ConfigError);
}

TEST_CASE("run_campaign surfaces unwritable output paths") {
    ExperimentConfig cfg = default_config();
    cfg.functions = {"f1"};
    cfg.algorithms = {"sso"};
    cfg.runs = 1;
    cfg.iterations = 0;
    cfg.population = 4;
    cfg.output_dir = "/dev/null/campaign";  // cannot be created
    CHECK_THROWS(run_campaign(cfg));
}
