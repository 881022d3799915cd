#include "arbq/oracle.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace arbq {

namespace {

struct Enumerator {
    const ArbitrageInstance& inst;
    int k_len;
    std::vector<int> path;
    std::vector<std::uint8_t> visited;
    std::uint64_t explored = 0;
    bool found = false;
    double best_cost = 0.0;
    std::vector<int> best_path;

    explicit Enumerator(const ArbitrageInstance& inst)
        : inst(inst),
          k_len(inst.cycle_length),
          visited(static_cast<std::size_t>(inst.currency_count()), 0) {}

    void consider(double cost) {
        ++explored;
        if (!found || cost < best_cost ||
            (cost == best_cost && path < best_path)) {
            found = true;
            best_cost = cost;
            best_path = path;
        }
    }

    // Canonical start = minimum index in the cycle, so deeper vertices are
    // restricted to indices greater than path[0].
    void dfs(int vertex, double cost) {
        if (static_cast<int>(path.size()) == k_len) {
            if (inst.has_edge(vertex, path[0]))
                consider(cost + inst.edge_weight(vertex, path[0]));
            return;
        }
        for (int next : inst.out_edges[vertex]) {
            if (next <= path[0] || visited[next]) continue;
            visited[next] = 1;
            path.push_back(next);
            dfs(next, cost + inst.edge_weight(vertex, next));
            path.pop_back();
            visited[next] = 0;
        }
    }

    void run() {
        for (int start = 0; start < inst.currency_count(); ++start) {
            visited[start] = 1;
            path.assign(1, start);
            dfs(start, 0.0);
            visited[start] = 0;
        }
    }
};

}  // namespace

OracleResult best_cycle(const ArbitrageInstance& inst) {
    const auto t0 = std::chrono::steady_clock::now();
    Enumerator en(inst);
    en.run();

    OracleResult result;
    result.explored = en.explored;
    if (en.found) {
        result.best.order = en.best_path;
        result.best.order.push_back(en.best_path[0]);
        result.best.feasible = true;
        result.best.objective = en.best_cost;
        result.best.profit_pips = profit_pips(std::exp(-en.best_cost));
    }
    result.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    return result;
}

std::pair<Bitstring, double> brute_force_qubo(const QuboModel& model) {
    const int n = model.variable_count();
    if (n > 24)
        throw std::invalid_argument("brute_force_qubo limited to n <= 24, got " +
                                    std::to_string(n));

    Bitstring x(n, 0);
    double energy = model.energy(x);  // running value, maintained via Gray code
    std::uint64_t best_value = 0;
    double best_energy = energy;

    // Gray-code walk: state g = i ^ (i >> 1); step i flips bit ctz(i).
    std::uint64_t gray = 0;
    const std::uint64_t total = 1ULL << n;
    for (std::uint64_t i = 1; i < total; ++i) {
        const int bit = std::countr_zero(i);
        energy += model.flip_delta(x, bit);
        x[bit] ^= 1;
        gray ^= 1ULL << bit;
        // re-evaluate exactly near the incumbent so accumulated float error
        // cannot corrupt the argmin or the tie-break
        if (energy <= best_energy + 1e-9) {
            const double exact = model.energy(x);
            if (exact < best_energy ||
                (exact == best_energy && gray < best_value)) {
                best_energy = exact;
                best_value = gray;
            }
        }
    }

    Bitstring best(n, 0);
    for (int a = 0; a < n; ++a) best[a] = (best_value >> a) & 1;
    return {best, best_energy};
}

}  // namespace arbq
