#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "arbq/bench.hpp"
#include "test_util.hpp"

using namespace arbq;
using namespace arbq::testutil;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

BenchConfig small_config() {
    BenchConfig cfg;
    cfg.dataset = std::string(ARBIQ_DATA_DIR) + "/rates_14.csv";
    cfg.k_min = 2;
    cfg.k_max = 3;
    cfg.solvers = {"oracle", "tabu"};
    cfg.seeds = 2;
    cfg.base_seed = 5;
    return cfg;
}

}  // namespace

TEST_CASE("bench validation errors") {
    BenchConfig cfg = small_config();
    SUBCASE("empty solver list") {
        cfg.solvers.clear();
        CHECK_THROWS_AS(run_bench(cfg), std::invalid_argument);
    }
    SUBCASE("inverted K range") {
        cfg.k_min = 3;
        cfg.k_max = 2;
        CHECK_THROWS_AS(run_bench(cfg), std::invalid_argument);
    }
    SUBCASE("unknown solver") {
        cfg.solvers = {"gurobi"};
        CHECK_THROWS_AS(run_bench(cfg), std::invalid_argument);
    }
}

TEST_CASE("bench grid outputs") {
    const BenchConfig cfg = small_config();
    const auto run = run_bench(cfg);
    CHECK(run.schema_version == 1);
    REQUIRE(run.oracle.count(2) == 1);
    REQUIRE(run.oracle.count(3) == 1);

    // solver profits never beat the oracle, and tabu matches it here
    const auto profits = run.best_profit();
    for (int k = 2; k <= 3; ++k) {
        REQUIRE(profits.count(k) == 1);
        const double oracle_pips = run.oracle.at(k).best.profit_pips;
        CHECK(profits.at(k).at("oracle") == doctest::Approx(oracle_pips));
        CHECK(profits.at(k).at("tabu") ==
              doctest::Approx(oracle_pips).epsilon(1e-9));
    }

    const std::filesystem::path dir = "bench_test_out";
    write_bench_outputs(run, dir.string());
    for (const char* name : {"profits.csv", "timings.csv", "run.json", "report.md"})
        CHECK(std::filesystem::exists(dir / name));

    // report.md carries the same profit values as profits.csv
    const auto report = slurp(dir / "report.md");
    std::istringstream csv(slurp(dir / "profits.csv"));
    std::string line;
    std::getline(csv, line);  // header
    while (std::getline(csv, line)) {
        std::istringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');  // K
        while (std::getline(row, cell, ','))
            if (!cell.empty()) CHECK(report.find(cell) != std::string::npos);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("bench grid is deterministic and pool-size independent") {
    BenchConfig cfg = small_config();
    cfg.threads = 1;
    const auto r1 = run_bench(cfg);
    cfg.threads = 4;
    const auto r2 = run_bench(cfg);
    REQUIRE(r1.cells.size() == r2.cells.size());
    for (std::size_t i = 0; i < r1.cells.size(); ++i) {
        CHECK(r1.cells[i].k == r2.cells[i].k);
        CHECK(r1.cells[i].solver == r2.cells[i].solver);
        CHECK(r1.cells[i].seed == r2.cells[i].seed);
        CHECK(r1.cells[i].report.best == r2.cells[i].report.best);
        CHECK(r1.cells[i].report.energy == r2.cells[i].report.energy);
    }

    const std::filesystem::path d1 = "bench_det_1", d2 = "bench_det_2";
    write_bench_outputs(r1, d1.string());
    write_bench_outputs(r2, d2.string());
    CHECK(slurp(d1 / "profits.csv") == slurp(d2 / "profits.csv"));
    std::filesystem::remove_all(d1);
    std::filesystem::remove_all(d2);
}
