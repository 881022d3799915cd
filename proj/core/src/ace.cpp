#include "arbq/ace.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "arbq/rng.hpp"

namespace arbq {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::string ansatz_name(Ansatz a) {
    return a == Ansatz::circuit1 ? "circuit1" : "circuit2";
}

Ansatz ansatz_from_name(const std::string& name) {
    if (name == "circuit1") return Ansatz::circuit1;
    if (name == "circuit2") return Ansatz::circuit2;
    throw std::invalid_argument("unknown ansatz '" + name + "'");
}

int qubit_count(int n) {
    if (n < 1) throw std::invalid_argument("variable count must be >= 1");
    int reg = 0;
    while ((1 << reg) < n) ++reg;  // ceil(log2 n)
    return reg + 1;
}

Statevector run_circuit(const CircuitSpec& spec) {
    if (static_cast<int>(spec.params.size()) != spec.param_count())
        throw std::invalid_argument("expected " + std::to_string(spec.param_count()) +
                                    " parameters, got " + std::to_string(spec.params.size()));
    const int q = spec.qubits;
    Statevector state(q);
    for (int t = 0; t < q; ++t) state.hadamard(t);

    std::size_t p = 0;
    for (int layer = 0; layer < spec.layers; ++layer) {
        if (spec.ansatz == Ansatz::circuit1) {
            for (int t = 0; t < q; ++t) state.ry(t, spec.params[p++]);
            for (int t = 0; t < q; ++t) state.rz(t, spec.params[p++]);
            for (int t = 0; t + 1 < q; ++t) state.cz(t, t + 1);  // chain
        } else {
            for (int t = 0; t < q; ++t) state.ry(t, spec.params[p++]);
            if (q > 1) {
                for (int t = 0; t + 1 < q; ++t) state.cnot(t, t + 1);
                if (q > 2) state.cnot(q - 1, 0);  // close the ring
            }
        }
    }
    return state;
}

AceDistribution measure(const Statevector& state, std::uint64_t shots, std::uint64_t seed) {
    const int q = state.qubits();
    const std::size_t registers = std::size_t{1} << (q - 1);
    AceDistribution dist;
    dist.prob0.assign(registers, 0.0);
    dist.prob1.assign(registers, 0.0);
    dist.shots = shots;

    std::vector<double> exact(state.dim());
    for (std::size_t i = 0; i < state.dim(); ++i) exact[i] = std::norm(state[i]);

    if (shots == 0) {
        for (std::size_t i = 0; i < exact.size(); ++i)
            ((i & 1) ? dist.prob1 : dist.prob0)[i >> 1] += exact[i];
        return dist;
    }

    // inverse-CDF sampling with the deterministic uniform helper
    std::vector<double> cdf(exact.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < exact.size(); ++i) cdf[i] = (acc += exact[i]);
    std::mt19937_64 gen(seed);
    const double inv = 1.0 / static_cast<double>(shots);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = uniform01(gen) * acc;
        const std::size_t i = static_cast<std::size_t>(
            std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        ((i & 1) ? dist.prob1 : dist.prob0)[i >> 1] += inv;
    }
    return dist;
}

Bitstring decode_distribution(const AceDistribution& dist, int n) {
    if (n > static_cast<int>(dist.prob0.size()))
        throw std::invalid_argument("variable count exceeds register space");
    Bitstring x(n, 0);
    for (int i = 0; i < n; ++i) {
        const double total = dist.prob0[i] + dist.prob1[i];
        if (total <= 0.0) continue;  // unobserved index stays 0
        x[i] = dist.prob1[i] >= dist.prob0[i] ? 1 : 0;
    }
    return x;
}

namespace {

double evaluate(const QuboModel& model, CircuitSpec spec, const std::vector<double>& theta,
                std::uint64_t shots, std::uint64_t seed, Bitstring* decoded) {
    spec.params = theta;
    const Statevector state = run_circuit(spec);
    const AceDistribution dist = measure(state, shots, seed);
    Bitstring x = decode_distribution(dist, model.variable_count());
    const double e = model.energy(x);
    if (decoded) *decoded = std::move(x);
    return e;
}

}  // namespace

TrainedParams ace_train(const QuboModel& model, Ansatz ansatz, int layers,
                        const DeConfig& de, std::uint64_t shots, std::uint64_t seed) {
    if (de.population < 4)
        throw std::invalid_argument("differential evolution needs population >= 4");
    if (de.generations < 0 || de.weight <= 0.0 || de.crossover < 0.0 || de.crossover > 1.0)
        throw std::invalid_argument("bad differential evolution config");
    if (layers < 1) throw std::invalid_argument("layers must be >= 1");

    CircuitSpec skeleton;
    skeleton.qubits = qubit_count(model.variable_count());
    skeleton.ansatz = ansatz;
    skeleton.layers = layers;
    const int dim = skeleton.param_count();
    const int pop = de.population;

    std::mt19937_64 gen(derive_seed(seed, 0xacedeULL));
    auto eval_seed = [&](std::uint64_t gen_idx, std::uint64_t member) {
        return derive_seed(seed, 0x5afeULL + gen_idx * 1000003ULL + member);
    };

    std::vector<std::vector<double>> population(pop, std::vector<double>(dim));
    std::vector<double> fitness(pop);
    for (int m = 0; m < pop; ++m)
        for (int d = 0; d < dim; ++d) population[m][d] = uniform01(gen) * kTwoPi;

    TrainedParams out;
    out.spec = skeleton;
    out.seed = seed;
    out.shots = shots;
    out.model_fingerprint = model.fingerprint();
    out.best_energy = std::numeric_limits<double>::infinity();

    auto consider = [&](const std::vector<double>& theta, double energy,
                        const Bitstring& decoded) {
        if (energy < out.best_energy) {
            out.best_energy = energy;
            out.spec.params = theta;
            out.best = decoded;
        }
    };

    Bitstring decoded;
    for (int m = 0; m < pop; ++m) {
        fitness[m] = evaluate(model, skeleton, population[m], shots, eval_seed(0, m), &decoded);
        consider(population[m], fitness[m], decoded);
    }
    out.trace.push_back(out.best_energy);

    std::vector<double> trial(dim);
    for (int g = 1; g <= de.generations; ++g) {
        for (int m = 0; m < pop; ++m) {
            int r1, r2, r3;
            do { r1 = static_cast<int>(uniform_index(gen, pop)); } while (r1 == m);
            do { r2 = static_cast<int>(uniform_index(gen, pop)); } while (r2 == m || r2 == r1);
            do {
                r3 = static_cast<int>(uniform_index(gen, pop));
            } while (r3 == m || r3 == r1 || r3 == r2);
            const int jrand = static_cast<int>(uniform_index(gen, dim));
            for (int d = 0; d < dim; ++d) {
                if (d == jrand || uniform01(gen) < de.crossover) {
                    double v = population[r1][d] +
                               de.weight * (population[r2][d] - population[r3][d]);
                    trial[d] = std::clamp(v, 0.0, kTwoPi);
                } else {
                    trial[d] = population[m][d];
                }
            }
            const double f = evaluate(model, skeleton, trial, shots,
                                      eval_seed(static_cast<std::uint64_t>(g), m), &decoded);
            consider(trial, f, decoded);
            if (f <= fitness[m]) {
                population[m] = trial;
                fitness[m] = f;
            }
        }
        out.trace.push_back(out.best_energy);
    }
    return out;
}

SolverReport ace_execute(const TrainedParams& trained, const QuboModel& model,
                         const ArbitrageInstance& inst, std::uint64_t shots,
                         std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    if (trained.spec.qubits != qubit_count(model.variable_count()))
        throw std::invalid_argument("trained circuit size does not match model");
    if (trained.model_fingerprint != 0 &&
        trained.model_fingerprint != model.fingerprint())
        throw std::invalid_argument("trained parameters belong to a different model");

    const Statevector state = run_circuit(trained.spec);
    const int n = model.variable_count();
    const AceDistribution dist = measure(state, shots, derive_seed(seed, 0xe7ecULL));
    Bitstring x = local_search(decode_distribution(dist, n), model, inst);
    double energy = model.energy(x);

    // The full-distribution decode is a single, typically dense candidate.
    // Finite-shot redraws of the same trained state leave unobserved registers
    // at 0, giving sparse samples the local search can rebuild into cycles;
    // keep the lowest-energy polished result.
    constexpr int kResamples = 30;
    for (int r = 0; r < kResamples; ++r) {
        const std::uint64_t draw =
            static_cast<std::uint64_t>(std::max(8, n * (1 + r % 3) / 6));
        const AceDistribution d =
            measure(state, draw, derive_seed(seed, 0x5a3fULL + static_cast<std::uint64_t>(r)));
        Bitstring y = local_search(decode_distribution(d, n), model, inst);
        const double e = model.energy(y);
        if (e < energy) {
            energy = e;
            x = std::move(y);
        }
    }

    SolverReport rep;
    rep.solver = "ace-ls";
    rep.energy = energy;
    rep.solution = decode(x, inst);
    rep.best = std::move(x);
    rep.seed = seed;
    rep.iterations = trained.trace.empty() ? 0 : trained.trace.size() - 1;
    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    return rep;
}

std::string TrainedParams::to_json() const {
    nlohmann::json j;
    j["ansatz"] = ansatz_name(spec.ansatz);
    j["layers"] = spec.layers;
    j["qubits"] = spec.qubits;
    j["theta"] = spec.params;
    j["best_energy"] = best_energy;
    std::string bits(best.size(), '0');
    for (std::size_t a = 0; a < best.size(); ++a)
        if (best[a]) bits[a] = '1';
    j["best_bitstring"] = bits;
    j["trace"] = trace;
    j["seed"] = seed;
    j["shots"] = shots;
    j["model_fingerprint"] = model_fingerprint;
    return j.dump(2);
}

TrainedParams TrainedParams::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    TrainedParams t;
    t.spec.ansatz = ansatz_from_name(j.at("ansatz").get<std::string>());
    t.spec.layers = j.at("layers").get<int>();
    t.spec.qubits = j.at("qubits").get<int>();
    t.spec.params = j.at("theta").get<std::vector<double>>();
    t.best_energy = j.at("best_energy").get<double>();
    const auto bits = j.at("best_bitstring").get<std::string>();
    t.best.resize(bits.size());
    for (std::size_t a = 0; a < bits.size(); ++a) t.best[a] = bits[a] == '1';
    t.trace = j.at("trace").get<std::vector<double>>();
    t.seed = j.at("seed").get<std::uint64_t>();
    t.shots = j.at("shots").get<std::uint64_t>();
    t.model_fingerprint = j.at("model_fingerprint").get<std::uint64_t>();
    return t;
}

void TrainedParams::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << to_json() << "\n";
}

TrainedParams TrainedParams::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return TrainedParams::from_json(text);
}

}  // namespace arbq
