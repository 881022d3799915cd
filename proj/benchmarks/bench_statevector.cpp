#include <benchmark/benchmark.h>

#include "arbq/ace.hpp"

namespace {

void BM_run_circuit(benchmark::State& state) {
    arbq::CircuitSpec spec;
    spec.qubits = static_cast<int>(state.range(0));
    spec.ansatz = arbq::Ansatz::circuit2;
    spec.layers = 2;
    spec.params.assign(spec.param_count(), 0.3);
    for (auto _ : state) {
        auto sv = arbq::run_circuit(spec);
        benchmark::DoNotOptimize(sv);
    }
}
BENCHMARK(BM_run_circuit)->Arg(7)->Arg(8)->Arg(9);

void BM_measure_exact(benchmark::State& state) {
    arbq::CircuitSpec spec;
    spec.qubits = static_cast<int>(state.range(0));
    spec.ansatz = arbq::Ansatz::circuit2;
    spec.layers = 2;
    spec.params.assign(spec.param_count(), 0.3);
    const auto sv = arbq::run_circuit(spec);
    for (auto _ : state) {
        auto dist = arbq::measure(sv, 0, 0);
        benchmark::DoNotOptimize(dist);
    }
}
BENCHMARK(BM_measure_exact)->Arg(7)->Arg(9);

}  // namespace
