#include <benchmark/benchmark.h>

#include "arbq/oracle.hpp"

namespace {

const arbq::ExchangeMatrix& table() {
    static const arbq::ExchangeMatrix m =
        arbq::load_matrix(std::string(ARBIQ_DATA_DIR) + "/rates_14.csv");
    return m;
}

void BM_oracle_enumeration(benchmark::State& state) {
    const auto inst = arbq::build_instance(table(), static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto result = arbq::best_cycle(inst);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_oracle_enumeration)->DenseRange(2, 10);

void BM_brute_force_qubo(benchmark::State& state) {
    // synthetic fully connected N=3, K=2 -> n = 9
    arbq::ExchangeMatrix m;
    m.currencies = {"AAA", "BBB", "CCC"};
    m.rates = {{1, 1.1, 0.9}, {0.92, 1, 1.05}, {1.08, 0.96, 1}};
    const auto inst = arbq::build_instance(m, 2);
    const auto model = arbq::build_qubo(inst);
    for (auto _ : state) {
        auto result = arbq::brute_force_qubo(model);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_brute_force_qubo);

}  // namespace

BENCHMARK_MAIN();
