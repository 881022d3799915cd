#include "arbq/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "arbq/rng.hpp"

namespace arbq {

namespace {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("ARBIQ_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string fmt_pips(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

std::string fmt_ms(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

}  // namespace

std::string solver_label(const std::string& id) {
    if (id == "oracle") return "Oracle (exact)";
    if (id == "sa") return "SA (QA surrogate)";
    if (id == "tabu") return "TS";
    if (id == "ace-ls") return "ACE-LS";
    return id;
}

std::map<int, std::map<std::string, double>> BenchmarkRun::best_profit() const {
    std::map<int, std::map<std::string, double>> out;
    for (const auto& cell : cells) {
        if (!cell.report.solution.feasible) continue;
        auto& row = out[cell.k];
        auto it = row.find(cell.solver);
        if (it == row.end() || cell.report.solution.profit_pips > it->second)
            row[cell.solver] = cell.report.solution.profit_pips;
    }
    return out;
}

std::map<int, std::map<std::string, double>> BenchmarkRun::median_elapsed_ms() const {
    std::map<int, std::map<std::string, std::vector<double>>> samples;
    for (const auto& cell : cells)
        samples[cell.k][cell.solver].push_back(cell.report.elapsed_ms);
    std::map<int, std::map<std::string, double>> out;
    for (auto& [k, row] : samples) {
        for (auto& [solver, times] : row) {
            std::sort(times.begin(), times.end());
            const std::size_t m = times.size() / 2;
            out[k][solver] = times.size() % 2 ? times[m] : 0.5 * (times[m - 1] + times[m]);
        }
    }
    return out;
}

BenchmarkRun run_bench(const BenchConfig& cfg) {
    if (cfg.solvers.empty()) throw std::invalid_argument("empty solver list");
    if (cfg.k_min < 2 || cfg.k_max < cfg.k_min)
        throw std::invalid_argument("invalid K range");
    if (cfg.seeds < 1) throw std::invalid_argument("need at least one seed");
    for (const auto& s : cfg.solvers)
        if (s != "oracle" && s != "sa" && s != "tabu" && s != "ace-ls")
            throw std::invalid_argument("unknown solver '" + s + "'");

    const ExchangeMatrix matrix = load_matrix(cfg.dataset);

    BenchmarkRun run;
    run.config = cfg;

    struct Prepared {
        ArbitrageInstance inst;
        QuboModel model;
    };
    std::map<int, Prepared> prepared;
    for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
        ArbitrageInstance inst = build_instance(matrix, k);
        QuboModel model = build_qubo(inst);
        run.oracle.emplace(k, best_cycle(inst));
        prepared.emplace(k, Prepared{std::move(inst), std::move(model)});
    }

    // cells in deterministic (k, solver, seed) order; workers pull by index
    std::vector<BenchCell> cells;
    for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
        for (const auto& solver : cfg.solvers) {
            if (solver == "oracle") {
                BenchCell cell{k, solver, cfg.base_seed, {}};
                cells.push_back(std::move(cell));
                continue;
            }
            for (int s = 0; s < cfg.seeds; ++s) {
                const std::uint64_t seed =
                    derive_seed(cfg.base_seed, static_cast<std::uint64_t>(k) * 1000 + s);
                cells.push_back(BenchCell{k, solver, seed, {}});
            }
        }
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= cells.size()) return;
            BenchCell& cell = cells[idx];
            const Prepared& p = prepared.at(cell.k);
            SolverConfig scfg = cfg.solver_cfg;
            scfg.seed = cell.seed;
            if (cell.solver == "oracle") {
                const OracleResult& o = run.oracle.at(cell.k);
                cell.report.solver = "oracle";
                cell.report.solution = o.best;
                cell.report.elapsed_ms = o.elapsed_ms;
                cell.report.iterations = o.explored;
                if (o.best.feasible) {
                    cell.report.best = encode(
                        std::span<const int>(o.best.order.data(), o.best.order.size() - 1),
                        p.model.layout());
                    cell.report.energy = o.best.objective;
                }
            } else if (cell.solver == "sa") {
                cell.report = simulated_annealing(p.model, p.inst, scfg);
            } else if (cell.solver == "tabu") {
                cell.report = tabu_search(p.model, p.inst, scfg);
            } else {  // ace-ls
                const auto t0 = std::chrono::steady_clock::now();
                TrainedParams trained = ace_train(p.model, cfg.ansatz, cfg.ace_layers,
                                                  cfg.de, cfg.shots, cell.seed);
                cell.report = ace_execute(trained, p.model, p.inst, cfg.shots, cell.seed);
                cell.report.elapsed_ms = std::chrono::duration<double, std::milli>(
                                             std::chrono::steady_clock::now() - t0)
                                             .count();
            }
        }
    };

    const int threads = std::min<int>(resolve_threads(cfg.threads),
                                      static_cast<int>(cells.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // solver profit can never exceed ground truth
    for (const auto& cell : cells) {
        if (!cell.report.solution.feasible) continue;
        const OracleResult& o = run.oracle.at(cell.k);
        if (!o.best.feasible ||
            cell.report.solution.profit_pips > o.best.profit_pips + 1e-6)
            throw std::logic_error("solver '" + cell.solver + "' exceeded the oracle at K=" +
                                   std::to_string(cell.k));
    }

    run.cells = std::move(cells);
    run.emitted_at = iso_timestamp();
    return run;
}

void write_bench_outputs(const BenchmarkRun& run, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);

    const auto profits = run.best_profit();
    const auto timings = run.median_elapsed_ms();
    const auto& solvers = run.config.solvers;

    auto open = [&](const char* name) {
        std::ofstream out(fs::path(out_dir) / name);
        if (!out) throw std::runtime_error(std::string("cannot write ") + name);
        return out;
    };

    {
        auto out = open("profits.csv");
        out << "K";
        for (const auto& s : solvers) out << "," << solver_label(s);
        out << "\n";
        for (int k = run.config.k_min; k <= run.config.k_max; ++k) {
            out << k;
            for (const auto& s : solvers) {
                out << ",";
                auto row = profits.find(k);
                if (row != profits.end()) {
                    auto it = row->second.find(s);
                    if (it != row->second.end()) out << fmt_pips(it->second);
                }
            }
            out << "\n";
        }
    }
    {
        auto out = open("timings.csv");
        out << "K";
        for (const auto& s : solvers) out << "," << solver_label(s);
        out << "\n";
        for (int k = run.config.k_min; k <= run.config.k_max; ++k) {
            out << k;
            for (const auto& s : solvers) {
                out << ",";
                auto row = timings.find(k);
                if (row != timings.end()) {
                    auto it = row->second.find(s);
                    if (it != row->second.end()) out << fmt_ms(it->second);
                }
            }
            out << "\n";
        }
    }
    {
        nlohmann::json j;
        j["schema_version"] = run.schema_version;
        j["dataset"] = run.config.dataset;
        j["k_min"] = run.config.k_min;
        j["k_max"] = run.config.k_max;
        j["solvers"] = solvers;
        j["seeds"] = run.config.seeds;
        j["base_seed"] = run.config.base_seed;
        j["emitted_at"] = run.emitted_at;
        nlohmann::json oracle = nlohmann::json::object();
        for (const auto& [k, o] : run.oracle) {
            nlohmann::json row;
            row["feasible"] = o.best.feasible;
            row["profit_pips"] = o.best.feasible ? o.best.profit_pips : 0.0;
            row["order"] = o.best.order;
            row["explored"] = o.explored;
            row["elapsed_ms"] = o.elapsed_ms;
            oracle[std::to_string(k)] = std::move(row);
        }
        j["oracle"] = std::move(oracle);
        nlohmann::json cells = nlohmann::json::array();
        for (const auto& cell : run.cells) {
            nlohmann::json row = nlohmann::json::parse(cell.report.to_json());
            row["k"] = cell.k;
            const OracleResult& o = run.oracle.at(cell.k);
            row["oracle_profit_pips"] = o.best.feasible ? o.best.profit_pips : 0.0;
            cells.push_back(std::move(row));
        }
        j["cells"] = std::move(cells);
        auto out = open("run.json");
        out << j.dump(2) << "\n";
    }
    {
        auto out = open("report.md");
        out << "# Arbitrage solver benchmark\n\n";
        out << "Dataset: `" << run.config.dataset << "`, seeds per cell: "
            << run.config.seeds << ", base seed: " << run.config.base_seed << "\n\n";
        out << "## Profit (pips, best across seeds)\n\n";
        out << "Infeasible-only cells show `-` with no cycle printed.\n\n";
        out << "| K |";
        for (const auto& s : solvers) out << " " << solver_label(s) << " |";
        out << "\n|---|";
        for (std::size_t i = 0; i < solvers.size(); ++i) out << "---|";
        out << "\n";
        for (int k = run.config.k_min; k <= run.config.k_max; ++k) {
            out << "| " << k << " |";
            for (const auto& s : solvers) {
                auto row = profits.find(k);
                if (row != profits.end() && row->second.count(s))
                    out << " " << fmt_pips(row->second.at(s)) << " |";
                else
                    out << " - |";
            }
            out << "\n";
        }
        out << "\n## Execution time (ms, median across seeds)\n\n";
        out << "| K |";
        for (const auto& s : solvers) out << " " << solver_label(s) << " |";
        out << "\n|---|";
        for (std::size_t i = 0; i < solvers.size(); ++i) out << "---|";
        out << "\n";
        for (int k = run.config.k_min; k <= run.config.k_max; ++k) {
            out << "| " << k << " |";
            for (const auto& s : solvers) {
                auto row = timings.find(k);
                if (row != timings.end() && row->second.count(s))
                    out << " " << fmt_ms(row->second.at(s)) << " |";
                else
                    out << " - |";
            }
            out << "\n";
        }
    }
}

}  // namespace arbq
