#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "arbq/ace.hpp"
#include "arbq/oracle.hpp"
#include "arbq/solvers.hpp"

namespace arbq {

struct BenchConfig {
    std::string dataset;
    int k_min = 2;
    int k_max = 10;
    std::vector<std::string> solvers;  // subset of {oracle, sa, tabu, ace-ls}
    int seeds = 5;
    std::uint64_t base_seed = 1;
    int threads = 0;  // 0 -> ARBIQ_THREADS env var, else hardware_concurrency
    SolverConfig solver_cfg;
    DeConfig de;
    Ansatz ansatz = Ansatz::circuit2;
    int ace_layers = 2;
    std::uint64_t shots = 0;  // exact measurement
};

struct BenchCell {
    int k = 0;
    std::string solver;
    std::uint64_t seed = 0;
    SolverReport report;
};

struct BenchmarkRun {
    int schema_version = 1;
    BenchConfig config;
    std::map<int, OracleResult> oracle;  // always computed, per K
    std::vector<BenchCell> cells;        // sorted by (k, solver, seed)
    std::string emitted_at;

    // Best profit across seeds; nullopt when no seed produced a feasible cycle.
    std::map<int, std::map<std::string, double>> best_profit() const;
    std::map<int, std::map<std::string, double>> median_elapsed_ms() const;
};

// Runs the (K, solver, seed) grid with a bounded worker pool. Results are
// assembled by sorted cell key, so output is independent of pool size.
// Throws std::logic_error if any solver profit exceeds the oracle optimum.
BenchmarkRun run_bench(const BenchConfig& cfg);

// Writes profits.csv, timings.csv, run.json, report.md under out_dir.
void write_bench_outputs(const BenchmarkRun& run, const std::string& out_dir);

std::string solver_label(const std::string& id);

}  // namespace arbq
