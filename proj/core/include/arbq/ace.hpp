#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arbq/qubo.hpp"
#include "arbq/solvers.hpp"
#include "arbq/statevector.hpp"

namespace arbq {

// Minimal-encoding ansatz ids. circuit1 stacks RY+RZ rotations with a CZ
// chain; circuit2 stacks RY rotations with a CNOT ring, so its per-layer
// depth does not grow with qubit count.
enum class Ansatz { circuit1, circuit2 };

std::string ansatz_name(Ansatz a);
Ansatz ansatz_from_name(const std::string& name);

// ceil(log2 n) + 1: register qubits for the variable index plus one ancilla.
int qubit_count(int n);

struct CircuitSpec {
    int qubits = 0;
    Ansatz ansatz = Ansatz::circuit2;
    int layers = 2;
    std::vector<double> params;

    int param_count() const {
        return layers * qubits * (ansatz == Ansatz::circuit1 ? 2 : 1);
    }
};

// Probabilities aggregated by (register index, ancilla bit). shots == 0 means
// exact amplitudes.
struct AceDistribution {
    std::vector<double> prob0;  // ancilla = 0, indexed by register value
    std::vector<double> prob1;  // ancilla = 1
    std::uint64_t shots = 0;
};

struct DeConfig {
    int population = 30;
    double weight = 0.7;     // F
    double crossover = 0.9;  // CR
    int generations = 150;
};

struct TrainedParams {
    CircuitSpec spec;
    Bitstring best;
    double best_energy = 0.0;
    std::vector<double> trace;  // best-so-far energy per generation (G+1 entries)
    std::uint64_t seed = 0;
    std::uint64_t shots = 0;
    std::uint64_t model_fingerprint = 0;

    std::string to_json() const;
    static TrainedParams from_json(const std::string& text);
    void save(const std::string& path) const;
    static TrainedParams load(const std::string& path);
};

// H on every qubit, then `layers` ansatz layers.
Statevector run_circuit(const CircuitSpec& spec);

// shots == 0: exact |amplitude|^2 aggregation. Otherwise `shots` draws from
// the seeded generator.
AceDistribution measure(const Statevector& state, std::uint64_t shots, std::uint64_t seed);

// x_i = 1 iff P(ancilla=1 | register=i) >= 1/2; unobserved registers give 0.
Bitstring decode_distribution(const AceDistribution& dist, int n);

// Differential evolution (rand/1/bin) over the circuit parameters, minimizing
// the QUBO energy of the decoded bitstring. Bounds [0, 2pi].
TrainedParams ace_train(const QuboModel& model, Ansatz ansatz, int layers,
                        const DeConfig& de, std::uint64_t shots, std::uint64_t seed);

// Execution phase: run the trained circuit once, decode, then local_search.
SolverReport ace_execute(const TrainedParams& trained, const QuboModel& model,
                         const ArbitrageInstance& inst, std::uint64_t shots,
                         std::uint64_t seed);

}  // namespace arbq
