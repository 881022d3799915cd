#pragma once

#include <cstdint>
#include <vector>

#include "arbq/exchange_matrix.hpp"

namespace arbq {

// Directed weighted graph view of an ExchangeMatrix for a fixed cycle length.
// Edge weights are -ln(rate), so profitable cycles have negative total weight.
struct ArbitrageInstance {
    ExchangeMatrix matrix;
    int cycle_length = 0;  // K, with 2 <= K <= N
    std::vector<std::vector<double>> weights;    // weights[i][j], valid on edges
    std::vector<std::vector<std::uint8_t>> adjacency;
    std::vector<std::vector<int>> out_edges;     // successors of i, ascending
    int edge_count = 0;

    int currency_count() const { return matrix.size(); }
    bool has_edge(int i, int j) const { return adjacency[i][j] != 0; }
    double edge_weight(int i, int j) const { return weights[i][j]; }
};

ArbitrageInstance build_instance(const ExchangeMatrix& matrix, int cycle_length);

}  // namespace arbq
