#pragma once

#include <cstdint>
#include <utility>

#include "arbq/qubo.hpp"

namespace arbq {

struct OracleResult {
    CycleSolution best;      // feasible == false when no length-K cycle exists
    std::uint64_t explored = 0;  // simple cycles enumerated
    double elapsed_ms = 0.0;
};

// Exhaustive enumeration of simple directed cycles with exactly K distinct
// vertices, canonicalized to start at the smallest vertex index. Returns the
// minimum-weight cycle; ties broken by lexicographically smallest order.
OracleResult best_cycle(const ArbitrageInstance& inst);

// Exact minimum over all 2^n bitstrings, n <= 24. Ties broken by smallest
// bitstring value (variable 0 = least significant bit).
std::pair<Bitstring, double> brute_force_qubo(const QuboModel& model);

}  // namespace arbq
