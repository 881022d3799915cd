#include "arbq/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace arbq {

void QuadraticForm::add(int a, int b, double coeff) {
    if (a == b) {
        linear[a] += coeff;  // x^2 = x on binaries
        return;
    }
    if (a > b) std::swap(a, b);
    quadratic[{a, b}] += coeff;
}

double QuadraticForm::value(std::span<const std::uint8_t> x) const {
    if (static_cast<int>(x.size()) != n)
        throw std::invalid_argument("bitstring length " + std::to_string(x.size()) +
                                    " does not match variable count " + std::to_string(n));
    double e = offset;
    for (int a = 0; a < n; ++a)
        if (x[a]) e += linear[a];
    for (const auto& [key, c] : quadratic)
        if (x[key.first] && x[key.second]) e += c;
    return e;
}

QuboModel::QuboModel(VariableLayout layout, QuadraticForm form, Penalties penalties)
    : layout_(layout), form_(std::move(form)), penalties_(penalties) {
    incident_.assign(form_.n, {});
    for (const auto& [key, c] : form_.quadratic) {
        incident_[key.first].emplace_back(key.second, c);
        incident_[key.second].emplace_back(key.first, c);
    }
}

double QuboModel::flip_delta(std::span<const std::uint8_t> x, int a) const {
    double d = form_.linear[a];
    for (const auto& [b, c] : incident_[a])
        if (x[b]) d += c;
    return x[a] ? -d : d;
}

std::uint64_t QuboModel::fingerprint() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= p[i];
            h *= 0x100000001b3ULL;
        }
    };
    mix(&form_.n, sizeof(form_.n));
    mix(&form_.offset, sizeof(form_.offset));
    mix(form_.linear.data(), form_.linear.size() * sizeof(double));
    for (const auto& [key, c] : form_.quadratic) {
        mix(&key.first, sizeof(int));
        mix(&key.second, sizeof(int));
        mix(&c, sizeof(double));
    }
    return h;
}

QuadraticForm build_bqp_objective(const ArbitrageInstance& inst) {
    const VariableLayout layout{inst.currency_count(), inst.cycle_length};
    QuadraticForm form(layout.variable_count());
    for (int i = 0; i < inst.currency_count(); ++i) {
        for (int j : inst.out_edges[i]) {
            const double w = inst.edge_weight(i, j);
            for (int k = 0; k < inst.cycle_length; ++k)
                form.add(layout.index(i, k), layout.index(j, k + 1), w);
        }
    }
    return form;
}

Penalties calibrate_penalties(const QuadraticForm& objective) {
    double rho = 1.0;
    std::vector<double> pos(objective.n, 0.0), neg(objective.n, 0.0);
    for (int a = 0; a < objective.n; ++a) {
        const double c = objective.linear[a];
        (c >= 0 ? pos[a] : neg[a]) += c;
    }
    for (const auto& [key, c] : objective.quadratic) {
        auto& side_a = c >= 0 ? pos[key.first] : neg[key.first];
        auto& side_b = c >= 0 ? pos[key.second] : neg[key.second];
        side_a += c;
        side_b += c;
    }
    for (int a = 0; a < objective.n; ++a)
        rho = std::max({rho, pos[a], -neg[a]});
    return Penalties{rho, rho, rho, rho};
}

QuboModel build_qubo(const ArbitrageInstance& inst, std::optional<Penalties> penalties) {
    const int n_cur = inst.currency_count();
    const int k_len = inst.cycle_length;
    const VariableLayout layout{n_cur, k_len};

    QuadraticForm form = build_bqp_objective(inst);
    const Penalties p = penalties ? *penalties : calibrate_penalties(form);
    if (p.one_hot <= 0 || p.no_repeat <= 0 || p.non_edge <= 0 || p.closure <= 0)
        throw std::invalid_argument("penalty weights must be positive");

    // one currency per position, positions 0..K-1: lambda1 (sum_i x_{i,k} - 1)^2
    for (int k = 0; k < k_len; ++k) {
        form.offset += p.one_hot;
        for (int i = 0; i < n_cur; ++i) {
            form.add_linear(layout.index(i, k), -p.one_hot);
            for (int j = i + 1; j < n_cur; ++j)
                form.add(layout.index(i, k), layout.index(j, k), 2.0 * p.one_hot);
        }
    }
    // each currency at most once among positions 0..K-1: lambda2 x_{i,k} x_{i,l}
    for (int i = 0; i < n_cur; ++i)
        for (int k = 0; k < k_len; ++k)
            for (int l = k + 1; l < k_len; ++l)
                form.add(layout.index(i, k), layout.index(i, l), p.no_repeat);
    // non-tradable adjacency (includes i == j, never an edge): lambda3
    for (int i = 0; i < n_cur; ++i)
        for (int j = 0; j < n_cur; ++j) {
            if (i != j && inst.has_edge(i, j)) continue;
            for (int k = 0; k < k_len; ++k)
                form.add(layout.index(i, k), layout.index(j, k + 1), p.non_edge);
        }
    // cycle closure: lambda4 (x_{i,0} - x_{i,K})^2
    for (int i = 0; i < n_cur; ++i) {
        form.add_linear(layout.index(i, 0), p.closure);
        form.add_linear(layout.index(i, k_len), p.closure);
        form.add(layout.index(i, 0), layout.index(i, k_len), -2.0 * p.closure);
    }

    return QuboModel(layout, std::move(form), p);
}

CycleSolution decode(std::span<const std::uint8_t> x, const ArbitrageInstance& inst) {
    const VariableLayout layout{inst.currency_count(), inst.cycle_length};
    if (static_cast<int>(x.size()) != layout.variable_count())
        throw std::invalid_argument("bitstring length " + std::to_string(x.size()) +
                                    " does not match layout size " +
                                    std::to_string(layout.variable_count()));
    const int k_len = inst.cycle_length;
    CycleSolution sol;

    std::vector<int> pick(k_len + 1, -1);
    for (int k = 0; k <= k_len; ++k) {
        int count = 0;
        for (int i = 0; i < inst.currency_count(); ++i) {
            if (x[layout.index(i, k)]) {
                ++count;
                pick[k] = i;
            }
        }
        if (count != 1) return sol;  // infeasible
    }
    std::vector<std::uint8_t> used(inst.currency_count(), 0);
    for (int k = 0; k < k_len; ++k) {
        if (used[pick[k]]) return sol;
        used[pick[k]] = 1;
    }
    if (pick[k_len] != pick[0]) return sol;
    double objective = 0.0;
    for (int k = 0; k < k_len; ++k) {
        if (!inst.has_edge(pick[k], pick[k + 1])) return sol;
        objective += inst.edge_weight(pick[k], pick[k + 1]);
    }
    sol.order = std::move(pick);
    sol.feasible = true;
    sol.objective = objective;
    sol.profit_pips = profit_pips(std::exp(-objective));
    return sol;
}

Bitstring encode(std::span<const int> cycle, const VariableLayout& layout) {
    const int k_len = layout.cycle_length;
    if (static_cast<int>(cycle.size()) != k_len)
        throw std::invalid_argument("cycle must list exactly K currencies");
    std::vector<std::uint8_t> seen(layout.currency_count, 0);
    for (int c : cycle) {
        if (c < 0 || c >= layout.currency_count)
            throw std::invalid_argument("currency index out of range: " + std::to_string(c));
        if (seen[c])
            throw std::invalid_argument("duplicate currency index: " + std::to_string(c));
        seen[c] = 1;
    }
    Bitstring x(layout.variable_count(), 0);
    for (int k = 0; k < k_len; ++k) x[layout.index(cycle[k], k)] = 1;
    x[layout.index(cycle[0], k_len)] = 1;
    return x;
}

double profit_pips(double rate_product) {
    if (!(rate_product > 0.0))
        throw std::invalid_argument("rate product must be positive");
    return (rate_product - 1.0) * 1e4;
}

void export_qubo(const QuadraticForm& form, std::ostream& out) {
    char buf[64];
    auto fmt = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    out << "# n " << form.n << " offset " << fmt(form.offset) << "\n";
    for (int a = 0; a < form.n; ++a)
        if (form.linear[a] != 0.0)
            out << a << " " << a << " " << fmt(form.linear[a]) << "\n";
    for (const auto& [key, c] : form.quadratic)
        if (c != 0.0)
            out << key.first << " " << key.second << " " << fmt(c) << "\n";
}

QuadraticForm import_qubo(std::istream& in) {
    std::string hash, word_n, word_offset;
    int n = 0;
    double offset = 0.0;
    if (!(in >> hash >> word_n >> n >> word_offset >> offset) || hash != "#" ||
        word_n != "n" || word_offset != "offset")
        throw std::runtime_error("bad QUBO header; expected '# n <n> offset <offset>'");
    QuadraticForm form(n);
    form.offset = offset;
    int a = 0, b = 0;
    double c = 0.0;
    while (in >> a >> b >> c) {
        if (a < 0 || b < 0 || a >= n || b >= n || a > b)
            throw std::runtime_error("bad QUBO term indices " + std::to_string(a) + " " +
                                     std::to_string(b));
        form.add(a, b, c);
    }
    return form;
}

}  // namespace arbq
