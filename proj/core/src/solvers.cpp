#include "arbq/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "arbq/rng.hpp"

namespace arbq {

namespace {

// Bitstring plus cached per-variable flip deltas, updated in O(degree) per flip.
struct DeltaState {
    const QuboModel& model;
    Bitstring x;
    std::vector<double> delta;
    double energy;

    DeltaState(const QuboModel& model, Bitstring init)
        : model(model), x(std::move(init)), delta(model.variable_count()),
          energy(model.energy(x)) {
        for (int a = 0; a < model.variable_count(); ++a)
            delta[a] = model.flip_delta(x, a);
    }

    void flip(int a) {
        energy += delta[a];
        x[a] ^= 1;
        delta[a] = -delta[a];
        const double da = x[a] ? 1.0 : -1.0;
        for (const auto& [b, w] : model.incident(a))
            delta[b] += (x[b] ? -1.0 : 1.0) * w * da;
    }
};

Bitstring random_bits(int n, std::mt19937_64& gen) {
    Bitstring x(n);
    for (int a = 0; a < n; ++a) x[a] = static_cast<std::uint8_t>(gen() & 1);
    return x;
}

SolverReport finish(const char* name, const QuboModel& model,
                    const ArbitrageInstance& inst, Bitstring best,
                    std::uint64_t iterations, std::uint64_t seed,
                    std::chrono::steady_clock::time_point t0) {
    SolverReport rep;
    rep.solver = name;
    rep.energy = model.energy(best);  // exact, not the incrementally tracked value
    // toy models need not line up with an instance layout; leave the solution
    // in its infeasible default then
    const VariableLayout layout{inst.currency_count(), inst.cycle_length};
    if (layout.variable_count() == static_cast<int>(best.size()))
        rep.solution = decode(best, inst);
    rep.best = std::move(best);
    rep.iterations = iterations;
    rep.seed = seed;
    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    return rep;
}

}  // namespace

std::string SolverReport::to_json() const {
    nlohmann::json j;
    j["solver"] = solver;
    j["energy"] = energy;
    j["feasible"] = solution.feasible;
    j["profit_pips"] = solution.feasible ? solution.profit_pips : 0.0;
    j["order"] = solution.order;
    j["elapsed_ms"] = elapsed_ms;
    j["seed"] = seed;
    j["iterations"] = iterations;
    std::string bits(best.size(), '0');
    for (std::size_t a = 0; a < best.size(); ++a)
        if (best[a]) bits[a] = '1';
    j["bitstring"] = bits;
    return j.dump();
}

SolverReport simulated_annealing(const QuboModel& model, const ArbitrageInstance& inst,
                                 const SolverConfig& cfg) {
    if (cfg.sa.sweeps <= 0 || cfg.restarts <= 0)
        throw std::invalid_argument("simulated annealing needs a positive budget");
    if (cfg.sa.beta_start <= 0 || cfg.sa.beta_end <= 0)
        throw std::invalid_argument("inverse temperatures must be positive");

    const auto t0 = std::chrono::steady_clock::now();
    const int n = model.variable_count();
    const double ratio = cfg.sa.beta_end / cfg.sa.beta_start;
    // descent polish needs an instance whose layout matches the model
    const bool polish =
        VariableLayout{inst.currency_count(), inst.cycle_length}.variable_count() == n;

    Bitstring global_best;
    double global_energy = std::numeric_limits<double>::infinity();
    std::uint64_t iterations = 0;

    for (int r = 0; r < cfg.restarts; ++r) {
        std::mt19937_64 gen(derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
        DeltaState state(model, random_bits(n, gen));
        Bitstring best = state.x;
        double best_energy = state.energy;

        for (int sweep = 0; sweep < cfg.sa.sweeps; ++sweep) {
            const double frac =
                cfg.sa.sweeps > 1 ? static_cast<double>(sweep) / (cfg.sa.sweeps - 1) : 1.0;
            const double beta = cfg.sa.beta_start * std::pow(ratio, frac);
            for (int step = 0; step < n; ++step) {
                const int a = static_cast<int>(uniform_index(gen, n));
                const double d = state.delta[a];
                if (d <= 0.0 || uniform01(gen) < std::exp(-beta * d)) {
                    state.flip(a);
                    if (state.energy < best_energy) {
                        best_energy = state.energy;
                        best = state.x;
                    }
                }
                ++iterations;
            }
        }
        // exact re-evaluation guards against drift in the incremental energy
        best_energy = model.energy(best);
        if (polish) {  // greedy flip/swap descent from this restart's best
            std::uint64_t evals = 0;
            best = local_search(best, model, inst, 50, &evals);
            best_energy = model.energy(best);
            iterations += evals;
        }
        if (best_energy < global_energy) {
            global_energy = best_energy;
            global_best = std::move(best);
        }
    }
    return finish("sa", model, inst, std::move(global_best), iterations, cfg.seed, t0);
}

SolverReport tabu_search(const QuboModel& model, const ArbitrageInstance& inst,
                         const SolverConfig& cfg) {
    const int n = model.variable_count();
    const int tenure = cfg.tabu.tenure > 0 ? cfg.tabu.tenure : std::max(7, n / 10);
    const int budget = cfg.tabu.iteration_budget > 0 ? cfg.tabu.iteration_budget : 20 * n;
    const int stall_limit = cfg.tabu.stall_limit > 0 ? cfg.tabu.stall_limit : 5 * n;
    if (budget <= 0 || cfg.restarts <= 0)
        throw std::invalid_argument("tabu search needs a positive budget");

    const auto t0 = std::chrono::steady_clock::now();
    const bool polish =
        VariableLayout{inst.currency_count(), inst.cycle_length}.variable_count() == n;
    Bitstring global_best;
    double global_energy = std::numeric_limits<double>::infinity();
    std::uint64_t iterations = 0;

    for (int r = 0; r < cfg.restarts; ++r) {
        std::mt19937_64 gen(derive_seed(cfg.seed, 0x7ab0ULL + static_cast<std::uint64_t>(r)));
        DeltaState state(model, random_bits(n, gen));
        Bitstring best = state.x;
        double best_energy = state.energy;
        std::vector<int> tabu_until(n, 0);
        int stall = 0;
        // cycle the tenure across restarts: short tenures intensify, long ones
        // diversify, and different cycle lengths favour different mixes
        const int tenure_r = tenure * (1 + r % 3);

        for (int it = 1; it <= budget && stall < stall_limit; ++it) {
            int move = -1;
            double move_delta = std::numeric_limits<double>::infinity();
            for (int a = 0; a < n; ++a) {
                const double d = state.delta[a];
                const bool tabu = tabu_until[a] >= it;
                const bool aspiration = state.energy + d < best_energy;
                if (tabu && !aspiration) continue;
                if (d < move_delta) {
                    move_delta = d;
                    move = a;
                }
            }
            if (move < 0) {  // everything tabu: take the move expiring soonest
                int soonest = std::numeric_limits<int>::max();
                for (int a = 0; a < n; ++a)
                    if (tabu_until[a] < soonest) {
                        soonest = tabu_until[a];
                        move = a;
                    }
            }
            state.flip(move);
            tabu_until[move] = it + tenure_r;
            ++iterations;
            if (state.energy < best_energy) {
                best_energy = state.energy;
                best = state.x;
                stall = 0;
            } else {
                ++stall;
            }
        }
        best_energy = model.energy(best);
        if (polish) {
            std::uint64_t evals = 0;
            best = local_search(best, model, inst, 50, &evals);
            best_energy = model.energy(best);
            iterations += evals;
        }
        if (best_energy < global_energy) {
            global_energy = best_energy;
            global_best = std::move(best);
        }
    }
    return finish("tabu", model, inst, std::move(global_best), iterations, cfg.seed, t0);
}

Bitstring local_search(const Bitstring& x, const QuboModel& model,
                       const ArbitrageInstance& inst, int max_rounds,
                       std::uint64_t* evaluations) {
    if (static_cast<int>(x.size()) != model.variable_count())
        throw std::invalid_argument("bitstring length does not match model");
    const VariableLayout& layout = model.layout();
    const int n = model.variable_count();

    Bitstring cur = x;
    double energy = model.energy(cur);
    bool feasible = decode(cur, inst).feasible;
    std::uint64_t evals = 0;

    auto try_move = [&](std::initializer_list<int> vars) {
        ++evals;
        double d = 0.0;
        for (int a : vars) {
            d += model.flip_delta(cur, a);
            cur[a] ^= 1;
        }
        bool keep = d < 0.0;
        bool now_feasible = feasible;
        if (keep) {
            now_feasible = decode(cur, inst).feasible;
            if (feasible && !now_feasible) keep = false;
        }
        if (keep) {
            energy += d;
            feasible = now_feasible;
            return true;
        }
        for (int a : vars) cur[a] ^= 1;  // revert
        return false;
    };

    for (int round = 0; round < max_rounds; ++round) {
        bool changed = false;
        // phase 1: single-bit flips in index order
        for (int a = 0; a < n; ++a) changed |= try_move({a});
        // phase 2: move a set bit within its position block
        for (int k = 0; k <= layout.cycle_length; ++k) {
            std::vector<int> set_bits;
            for (int i = 0; i < layout.currency_count; ++i)
                if (cur[layout.index(i, k)]) set_bits.push_back(layout.index(i, k));
            for (int vs : set_bits) {
                if (!cur[vs]) continue;  // moved by an earlier swap this block
                for (int i = 0; i < layout.currency_count; ++i) {
                    const int vu = layout.index(i, k);
                    if (cur[vu]) continue;
                    if (try_move({vs, vu})) {
                        changed = true;
                        break;  // vs is now clear
                    }
                }
            }
        }
        if (!changed) break;
    }
    if (evaluations) *evaluations = evals;
    return cur;
}

}  // namespace arbq
