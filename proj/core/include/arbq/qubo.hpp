#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "arbq/instance.hpp"

namespace arbq {

using Bitstring = std::vector<std::uint8_t>;

// Flat indexing of the position-occupancy variables x_{i,k}: currency i at
// cycle position k, positions 0..K inclusive (position K closes the cycle).
struct VariableLayout {
    int currency_count = 0;  // N
    int cycle_length = 0;    // K

    int index(int currency, int position) const {
        return position * currency_count + currency;
    }
    int currency_of(int var) const { return var % currency_count; }
    int position_of(int var) const { return var / currency_count; }
    int variable_count() const { return currency_count * (cycle_length + 1); }
};

// Sparse quadratic pseudo-boolean function
//   f(x) = offset + sum_a linear[a] x_a + sum_{a<b} quadratic[(a,b)] x_a x_b.
struct QuadraticForm {
    int n = 0;
    double offset = 0.0;
    std::vector<double> linear;
    std::map<std::pair<int, int>, double> quadratic;  // keys a < b

    explicit QuadraticForm(int n = 0) : n(n), linear(n, 0.0) {}

    // Accumulates coeff on x_a x_b (or the linear/offset slot when a == b or
    // the pair collapses). a == b adds to linear via x^2 = x.
    void add(int a, int b, double coeff);
    void add_linear(int a, double coeff) { linear[a] += coeff; }

    double value(std::span<const std::uint8_t> x) const;
};

struct Penalties {
    double one_hot = 0.0;   // lambda1: one currency per position
    double no_repeat = 0.0; // lambda2: currency used at most once
    double non_edge = 0.0;  // lambda3: adjacent positions must be tradable
    double closure = 0.0;   // lambda4: first position equals last
};

// Penalized QUBO over the position-occupancy variables. Immutable once built;
// energy evaluation and flip deltas are thread-safe.
class QuboModel {
public:
    QuboModel(VariableLayout layout, QuadraticForm form, Penalties penalties);

    int variable_count() const { return form_.n; }
    const VariableLayout& layout() const { return layout_; }
    const QuadraticForm& form() const { return form_; }
    const Penalties& penalties() const { return penalties_; }

    double energy(std::span<const std::uint8_t> x) const { return form_.value(x); }

    // Energy change from flipping variable a in x.
    double flip_delta(std::span<const std::uint8_t> x, int a) const;

    // Variables coupled to a, with the pair coefficient.
    const std::vector<std::pair<int, double>>& incident(int a) const {
        return incident_[a];
    }

    // FNV-1a over the canonical coefficient listing; ties persisted parameters
    // to the model they were trained on.
    std::uint64_t fingerprint() const;

private:
    VariableLayout layout_;
    QuadraticForm form_;
    Penalties penalties_;
    std::vector<std::vector<std::pair<int, double>>> incident_;
};

// Profit and feasibility verdict for one decoded bitstring.
struct CycleSolution {
    std::vector<int> order;   // K+1 currency indices, order[K] == order[0]; empty if infeasible
    bool feasible = false;
    double objective = 0.0;   // sum of -ln(rate) along the cycle
    double profit_pips = 0.0; // (exp(-objective) - 1) * 1e4
};

// Position-chain objective: for each edge (i,j) and position k,
// coefficient -ln(rate) on the pair (x_{i,k}, x_{j,k+1}). No linear terms.
QuadraticForm build_bqp_objective(const ArbitrageInstance& inst);

// Verma-Lewis penalty bound: rho = max(1, max_a max(C_a^+, -C_a^-)) over the
// objective's coefficients incident to each variable.
Penalties calibrate_penalties(const QuadraticForm& objective);

// Full penalized QUBO; penalties default to calibrate_penalties(objective).
QuboModel build_qubo(const ArbitrageInstance& inst,
                     std::optional<Penalties> penalties = std::nullopt);

CycleSolution decode(std::span<const std::uint8_t> x, const ArbitrageInstance& inst);
Bitstring encode(std::span<const int> cycle, const VariableLayout& layout);

// (rate product - 1) * 1e4; throws std::invalid_argument for product <= 0.
double profit_pips(double rate_product);

// Text export/import: "# n <n> offset <offset>" then "a b coeff" lines,
// a <= b, a == b meaning a linear term.
void export_qubo(const QuadraticForm& form, std::ostream& out);
QuadraticForm import_qubo(std::istream& in);

}  // namespace arbq
