#include "arbq/instance.hpp"

#include <cmath>
#include <stdexcept>

namespace arbq {

ArbitrageInstance build_instance(const ExchangeMatrix& matrix, int cycle_length) {
    matrix.validate();
    const int n = matrix.size();
    if (cycle_length < 2 || cycle_length > n)
        throw std::invalid_argument("K out of range: K=" + std::to_string(cycle_length) +
                                    " must satisfy 2 <= K <= N=" + std::to_string(n));

    ArbitrageInstance inst;
    inst.matrix = matrix;
    inst.cycle_length = cycle_length;
    inst.weights.assign(n, std::vector<double>(n, 0.0));
    inst.adjacency.assign(n, std::vector<std::uint8_t>(n, 0));
    inst.out_edges.assign(n, {});
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j || matrix.rates[i][j] <= 0.0) continue;
            inst.adjacency[i][j] = 1;
            inst.weights[i][j] = -std::log(matrix.rates[i][j]);
            inst.out_edges[i].push_back(j);
            ++inst.edge_count;
        }
    }
    return inst;
}

}  // namespace arbq
