#include <benchmark/benchmark.h>

#include <random>

#include "arbq/rng.hpp"
#include "arbq/solvers.hpp"

namespace {

struct Fixture {
    arbq::ArbitrageInstance inst;
    arbq::QuboModel model;
};

Fixture make_fixture(int k) {
    const auto m = arbq::load_matrix(std::string(ARBIQ_DATA_DIR) + "/rates_14.csv");
    auto inst = arbq::build_instance(m, k);
    auto model = arbq::build_qubo(inst);
    return {std::move(inst), std::move(model)};
}

void BM_simulated_annealing(benchmark::State& state) {
    const auto fx = make_fixture(static_cast<int>(state.range(0)));
    arbq::SolverConfig cfg;
    cfg.seed = 7;
    cfg.restarts = 1;
    cfg.sa.sweeps = 200;
    for (auto _ : state) {
        auto rep = arbq::simulated_annealing(fx.model, fx.inst, cfg);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_simulated_annealing)->Arg(2)->Arg(5)->Arg(10);

void BM_tabu_search(benchmark::State& state) {
    const auto fx = make_fixture(static_cast<int>(state.range(0)));
    arbq::SolverConfig cfg;
    cfg.seed = 7;
    cfg.restarts = 1;
    for (auto _ : state) {
        auto rep = arbq::tabu_search(fx.model, fx.inst, cfg);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_tabu_search)->Arg(2)->Arg(5)->Arg(10);

void BM_local_search(benchmark::State& state) {
    const auto fx = make_fixture(static_cast<int>(state.range(0)));
    std::mt19937_64 gen(11);
    arbq::Bitstring x(fx.model.variable_count());
    for (auto& b : x) b = static_cast<std::uint8_t>(gen() & 1);
    for (auto _ : state) {
        auto out = arbq::local_search(x, fx.model, fx.inst);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_local_search)->Arg(2)->Arg(5)->Arg(10);

}  // namespace
