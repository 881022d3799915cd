#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "arbq/bench.hpp"
#include "arbq/rng.hpp"

namespace {

using namespace arbq;

std::vector<std::string> cycle_codes(const CycleSolution& sol, const ExchangeMatrix& m) {
    std::vector<std::string> codes;
    for (int idx : sol.order) codes.push_back(m.currencies[idx]);
    return codes;
}

void print_report(const SolverReport& rep, const ExchangeMatrix& matrix,
                  const std::string& format) {
    const auto codes = cycle_codes(rep.solution, matrix);
    std::string cycle = "-";
    if (rep.solution.feasible) {
        std::ostringstream ss;
        for (std::size_t i = 0; i < codes.size(); ++i)
            ss << (i ? "->" : "") << codes[i];
        cycle = ss.str();
    }
    char pips[32], en[32], ms[32];
    std::snprintf(pips, sizeof(pips), "%.4f", rep.solution.feasible ? rep.solution.profit_pips : 0.0);
    std::snprintf(en, sizeof(en), "%.9g", rep.energy);
    std::snprintf(ms, sizeof(ms), "%.3f", rep.elapsed_ms);

    if (format == "json") {
        nlohmann::json j = nlohmann::json::parse(rep.to_json());
        j["cycle"] = rep.solution.feasible ? codes : std::vector<std::string>{};
        std::cout << j.dump() << "\n";
    } else if (format == "csv") {
        std::cout << "solver,feasible,cycle,profit_pips,energy,elapsed_ms\n";
        std::cout << rep.solver << "," << (rep.solution.feasible ? "true" : "false") << ","
                  << cycle << "," << pips << "," << en << "," << ms << "\n";
    } else {  // md
        std::cout << "| solver | feasible | cycle | profit_pips | energy | elapsed_ms |\n";
        std::cout << "|---|---|---|---|---|---|\n";
        std::cout << "| " << rep.solver << " | " << (rep.solution.feasible ? "yes" : "no")
                  << " | " << cycle << " | " << pips << " | " << en << " | " << ms
                  << " |\n";
    }
}

int run_solve(const std::string& data, int k, const std::string& solver,
              std::uint64_t seed, std::optional<double> penalty, int repeats,
              const std::string& params_in, const std::string& params_out,
              const std::string& format) {
    const ExchangeMatrix matrix = load_matrix(data);
    const ArbitrageInstance inst = build_instance(matrix, k);
    std::optional<Penalties> penalties;
    if (penalty) {
        if (*penalty <= 0) throw std::invalid_argument("penalty must be positive");
        penalties = Penalties{*penalty, *penalty, *penalty, *penalty};
    }
    const QuboModel model = build_qubo(inst, penalties);

    SolverReport rep;
    if (solver == "oracle") {
        const OracleResult res = best_cycle(inst);
        rep.solver = "oracle";
        rep.solution = res.best;
        rep.elapsed_ms = res.elapsed_ms;
        rep.iterations = res.explored;
        if (res.best.feasible) {
            rep.best = encode(
                std::span<const int>(res.best.order.data(), res.best.order.size() - 1),
                model.layout());
            rep.energy = res.best.objective;
        }
    } else if (solver == "sa" || solver == "tabu") {
        SolverConfig cfg;
        cfg.seed = seed;
        rep = solver == "sa" ? simulated_annealing(model, inst, cfg)
                             : tabu_search(model, inst, cfg);
    } else if (solver == "ace-ls") {
        DeConfig de;
        if (!params_in.empty()) {
            const TrainedParams trained = TrainedParams::load(params_in);
            rep = ace_execute(trained, model, inst, trained.shots, seed);
        } else {
            bool have = false;
            TrainedParams best_trained;
            const auto t0 = std::chrono::steady_clock::now();
            for (int r = 0; r < repeats; ++r) {
                TrainedParams trained =
                    ace_train(model, Ansatz::circuit2, 2, de, 0, derive_seed(seed, r));
                SolverReport cand = ace_execute(trained, model, inst, 0, seed);
                if (!have || cand.energy < rep.energy) {
                    have = true;
                    rep = std::move(cand);
                    best_trained = std::move(trained);
                }
            }
            rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
            if (!params_out.empty()) best_trained.save(params_out);
        }
    } else {
        throw CLI::ValidationError("--solver", "unknown solver '" + solver + "'");
    }

    print_report(rep, matrix, format);
    return rep.solution.feasible ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Currency arbitrage cycle optimizer"};
    app.require_subcommand(1);

    // solve
    std::string data, solver = "oracle", format = "json", params_in, params_out;
    int k = 2, repeats = 1;
    std::uint64_t seed = 1;
    double penalty_value = 0.0;
    bool penalty_set = false;
    auto* solve = app.add_subcommand("solve", "Solve one (N, K) instance");
    solve->add_option("--data", data, "rate matrix file (.csv or .json)")->required();
    solve->add_option("--k", k, "cycle length")->required();
    solve->add_option("--solver", solver, "oracle|sa|tabu|ace-ls");
    solve->add_option("--seed", seed, "random seed");
    solve->add_option("--penalty", penalty_value, "override all four penalty weights")
        ->check(CLI::PositiveNumber)
        ->each([&](const std::string&) { penalty_set = true; });
    solve->add_option("--repeats", repeats, "ace-ls training repeats, best-of selection");
    solve->add_option("--params-in", params_in, "load trained circuit parameters");
    solve->add_option("--params-out", params_out, "store trained circuit parameters");
    solve->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "md"}));

    // bench
    BenchConfig bench_cfg;
    std::string solvers_csv = "oracle,sa,tabu";
    std::string out_dir = "bench-out";
    auto* bench = app.add_subcommand("bench", "Run the solver grid and emit reports");
    bench->add_option("--data", bench_cfg.dataset, "rate matrix file")->required();
    bench->add_option("--k-min", bench_cfg.k_min, "smallest cycle length");
    bench->add_option("--k-max", bench_cfg.k_max, "largest cycle length");
    bench->add_option("--solvers", solvers_csv, "comma-separated solver list");
    bench->add_option("--seeds", bench_cfg.seeds, "seeds per (solver, K) cell");
    bench->add_option("--seed", bench_cfg.base_seed, "base seed");
    bench->add_option("--threads", bench_cfg.threads, "worker pool size (0 = auto)");
    bench->add_option("--out", out_dir, "output directory")->required();

    // export-qubo
    std::string exp_data, exp_out;
    int exp_k = 2;
    auto* exp = app.add_subcommand("export-qubo", "Write the QUBO in text form");
    exp->add_option("--data", exp_data, "rate matrix file")->required();
    exp->add_option("--k", exp_k, "cycle length")->required();
    exp->add_option("--out", exp_out, "output file")->required();

    try {
        app.parse(argc, argv);
        if (*solve) {
            std::optional<double> penalty;
            if (penalty_set) penalty = penalty_value;
            return run_solve(data, k, solver, seed, penalty, repeats, params_in,
                             params_out, format);
        }
        if (*bench) {
            std::stringstream ss(solvers_csv);
            bench_cfg.solvers.clear();
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) bench_cfg.solvers.push_back(item);
            const BenchmarkRun run = run_bench(bench_cfg);
            write_bench_outputs(run, out_dir);
            std::cout << "wrote " << out_dir << "/{profits.csv,timings.csv,run.json,report.md}\n";
            return 0;
        }
        // export-qubo
        const ExchangeMatrix matrix = load_matrix(exp_data);
        const ArbitrageInstance inst = build_instance(matrix, exp_k);
        const QuboModel model = build_qubo(inst);
        std::ofstream outf(exp_out);
        if (!outf) throw std::runtime_error("cannot write '" + exp_out + "'");
        export_qubo(model.form(), outf);
        if (!outf.good()) throw std::runtime_error("write failed for '" + exp_out + "'");
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
