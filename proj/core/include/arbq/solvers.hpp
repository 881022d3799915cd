#pragma once

#include <cstdint>
#include <string>

#include "arbq/qubo.hpp"

namespace arbq {

struct SaConfig {
    double beta_start = 0.1;
    double beta_end = 10.0;   // geometric schedule between the two
    int sweeps = 2000;        // one sweep = n single-flip proposals
};

struct TabuConfig {
    int tenure = 0;           // 0 -> max(7, n/10)
    int iteration_budget = 0; // 0 -> 20 * n
    int stall_limit = 0;      // 0 -> 5 * n
};

struct SolverConfig {
    std::uint64_t seed = 0;
    int restarts = 30;  // best-of across seeds derived from `seed`
    SaConfig sa;
    TabuConfig tabu;
};

struct SolverReport {
    std::string solver;
    Bitstring best;
    double energy = 0.0;
    CycleSolution solution;
    double elapsed_ms = 0.0;
    std::uint64_t iterations = 0;
    std::uint64_t seed = 0;

    std::string to_json() const;
};

SolverReport simulated_annealing(const QuboModel& model, const ArbitrageInstance& inst,
                                 const SolverConfig& cfg);

SolverReport tabu_search(const QuboModel& model, const ArbitrageInstance& inst,
                         const SolverConfig& cfg);

// Greedy repair/improvement rounds: phase 1 sweeps single-bit flips in index
// order, phase 2 moves the set bit within each position block. A move is kept
// iff energy strictly decreases and a feasible decode never becomes infeasible.
Bitstring local_search(const Bitstring& x, const QuboModel& model,
                       const ArbitrageInstance& inst, int max_rounds = 50,
                       std::uint64_t* evaluations = nullptr);

}  // namespace arbq
