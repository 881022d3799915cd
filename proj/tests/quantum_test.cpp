#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>

#include "arbq/ace.hpp"
#include "arbq/oracle.hpp"
#include "test_util.hpp"

using namespace arbq;
using namespace arbq::testutil;

namespace {

using C = std::complex<double>;
using Mat4 = std::array<std::array<C, 4>, 4>;
using Vec4 = std::array<C, 4>;

Mat4 kron(const std::array<std::array<C, 2>, 2>& a,
          const std::array<std::array<C, 2>, 2>& b) {
    Mat4 out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
    return out;
}

Vec4 matvec(const Mat4& m, const Vec4& v) {
    Vec4 out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i] += m[i][j] * v[j];
    return out;
}

// toy 4-variable model with unique minimum 0101
QuboModel toy4() {
    QuadraticForm form(4);
    form.add_linear(0, 1.0);
    form.add_linear(1, -1.0);
    form.add_linear(2, 1.0);
    form.add_linear(3, -1.0);
    return QuboModel({4, 0}, form, Penalties{1, 1, 1, 1});
}

}  // namespace

TEST_CASE("qubit_count") {
    CHECK(qubit_count(42) == 7);
    CHECK(qubit_count(56) == 7);
    CHECK(qubit_count(70) == 8);
    CHECK(qubit_count(84) == 8);
    CHECK(qubit_count(98) == 8);
    CHECK(qubit_count(112) == 8);
    CHECK(qubit_count(126) == 8);
    CHECK(qubit_count(140) == 9);
    CHECK(qubit_count(154) == 9);
    CHECK(qubit_count(1) == 1);
    CHECK(qubit_count(64) == 7);
    CHECK_THROWS_AS(qubit_count(0), std::invalid_argument);
}

TEST_CASE("circuit execution") {
    SUBCASE("zero rotations leave the uniform state uniform (circuit2)") {
        CircuitSpec spec;
        spec.qubits = 2;
        spec.ansatz = Ansatz::circuit2;
        spec.layers = 1;
        spec.params = {0.0, 0.0};
        const auto sv = run_circuit(spec);
        for (std::size_t i = 0; i < sv.dim(); ++i) {
            CHECK(sv[i].real() == doctest::Approx(0.5).epsilon(1e-12));
            CHECK(sv[i].imag() == doctest::Approx(0.0).epsilon(1e-12));
        }
    }
    SUBCASE("norm preserved on random circuits") {
        std::mt19937_64 gen(1);
        for (int trial = 0; trial < 100; ++trial) {
            CircuitSpec spec;
            spec.qubits = 2 + static_cast<int>(uniform_index(gen, 6));
            spec.ansatz = (gen() & 1) ? Ansatz::circuit1 : Ansatz::circuit2;
            spec.layers = 1 + static_cast<int>(uniform_index(gen, 3));
            spec.params.resize(spec.param_count());
            for (auto& p : spec.params) p = uniform01(gen) * 2 * std::numbers::pi;
            CHECK(std::abs(run_circuit(spec).norm() - 1.0) <= 1e-10);
        }
    }
    SUBCASE("q=2 circuit2 amplitudes match explicit matrix algebra") {
        CircuitSpec spec;
        spec.qubits = 2;
        spec.ansatz = Ansatz::circuit2;
        spec.layers = 1;
        spec.params = {std::numbers::pi, 0.0};
        const auto sv = run_circuit(spec);

        const double s = 1.0 / std::sqrt(2.0);
        const std::array<std::array<C, 2>, 2> H{{{C(s), C(s)}, {C(s), C(-s)}}};
        const std::array<std::array<C, 2>, 2> I{{{C(1), C(0)}, {C(0), C(1)}}};
        const double c = std::cos(std::numbers::pi / 2);
        const double sn = std::sin(std::numbers::pi / 2);
        const std::array<std::array<C, 2>, 2> RYpi{{{C(c), C(-sn)}, {C(sn), C(c)}}};

        Vec4 v{C(1), C(0), C(0), C(0)};
        v = matvec(kron(H, I), v);       // H on qubit 0 (most significant)
        v = matvec(kron(I, H), v);       // H on qubit 1
        v = matvec(kron(RYpi, I), v);    // RY(pi) on qubit 0
        // CNOT control qubit 0, target qubit 1: swaps |10> and |11>
        std::swap(v[2], v[3]);

        for (int i = 0; i < 4; ++i) {
            CHECK(sv[i].real() == doctest::Approx(v[i].real()).epsilon(1e-12));
            CHECK(sv[i].imag() == doctest::Approx(v[i].imag()).epsilon(1e-12));
        }
    }
    SUBCASE("parameter length mismatch throws") {
        CircuitSpec spec;
        spec.qubits = 3;
        spec.ansatz = Ansatz::circuit1;
        spec.layers = 2;
        spec.params = {0.1, 0.2};
        CHECK_THROWS_AS(run_circuit(spec), std::invalid_argument);
    }
}

TEST_CASE("measurement") {
    SUBCASE("exact on the uniform state") {
        CircuitSpec spec;
        spec.qubits = 3;
        spec.ansatz = Ansatz::circuit2;
        spec.layers = 1;
        spec.params = {0, 0, 0};
        const auto dist = measure(run_circuit(spec), 0, 0);
        for (std::size_t r = 0; r < dist.prob0.size(); ++r) {
            CHECK(dist.prob0[r] == doctest::Approx(0.125).epsilon(1e-9));
            CHECK(dist.prob1[r] == doctest::Approx(0.125).epsilon(1e-9));
        }
    }
    SUBCASE("basis state concentrates all mass") {
        Statevector sv(3);
        sv[0] = 0.0;
        sv[3 * 2 + 1] = 1.0;  // register 3, ancilla 1
        const auto dist = measure(sv, 0, 0);
        CHECK(dist.prob1[3] == doctest::Approx(1.0));
        double rest = 0;
        for (std::size_t r = 0; r < 4; ++r) rest += dist.prob0[r];
        CHECK(rest == doctest::Approx(0.0));
    }
    SUBCASE("sampled distribution is close to exact") {
        CircuitSpec spec;
        spec.qubits = 4;
        spec.ansatz = Ansatz::circuit1;
        spec.layers = 2;
        spec.params.resize(spec.param_count());
        std::mt19937_64 gen(21);
        for (auto& p : spec.params) p = uniform01(gen) * 2 * std::numbers::pi;
        const auto sv = run_circuit(spec);
        const auto exact = measure(sv, 0, 0);
        const auto sampled = measure(sv, 100000, 99);
        double tv = 0.0;
        for (std::size_t r = 0; r < exact.prob0.size(); ++r)
            tv += std::abs(exact.prob0[r] - sampled.prob0[r]) +
                  std::abs(exact.prob1[r] - sampled.prob1[r]);
        CHECK(tv / 2 <= 0.01);
        double total = 0.0;
        for (std::size_t r = 0; r < sampled.prob0.size(); ++r)
            total += sampled.prob0[r] + sampled.prob1[r];
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("decode_distribution") {
    AceDistribution dist;
    SUBCASE("all ancilla mass on 1") {
        dist.prob0.assign(8, 0.0);
        dist.prob1.assign(8, 0.125);
        CHECK(decode_distribution(dist, 6) == Bitstring(6, 1));
    }
    SUBCASE("uniform conditional decodes to ones by the tie rule") {
        dist.prob0.assign(8, 0.0625);
        dist.prob1.assign(8, 0.0625);
        CHECK(decode_distribution(dist, 8) == Bitstring(8, 1));
    }
    SUBCASE("alternating conditionals") {
        dist.prob0.assign(8, 0.0);
        dist.prob1.assign(8, 0.0);
        for (int r = 0; r < 8; ++r) {
            const double p1 = (r % 2 == 0) ? 0.9 : 0.1;
            dist.prob1[r] = p1 / 8;
            dist.prob0[r] = (1 - p1) / 8;
        }
        const auto x = decode_distribution(dist, 8);
        for (int i = 0; i < 8; ++i) CHECK(x[i] == (i % 2 == 0 ? 1 : 0));
    }
    SUBCASE("unobserved register index gives 0") {
        dist.prob0.assign(4, 0.0);
        dist.prob1.assign(4, 0.0);
        dist.prob1[0] = 1.0;
        const auto x = decode_distribution(dist, 3);
        CHECK(x == Bitstring{1, 0, 0});
    }
    SUBCASE("n larger than register space throws") {
        dist.prob0.assign(4, 0.25);
        dist.prob1.assign(4, 0.0);
        CHECK_THROWS_AS(decode_distribution(dist, 5), std::invalid_argument);
    }
}

TEST_CASE("differential evolution training") {
    const auto model = toy4();
    const auto [bx, be] = brute_force_qubo(model);
    REQUIRE(be == doctest::Approx(-2.0));

    SUBCASE("reaches the toy minimum on most seeds") {
        DeConfig de;
        de.population = 20;
        de.generations = 100;
        int hits = 0;
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto t = ace_train(model, Ansatz::circuit2, 2, de, 0, seed);
            if (t.best == bx) ++hits;
        }
        CHECK(hits >= 4);
    }
    SUBCASE("zero generations returns the best initial individual") {
        DeConfig de;
        de.generations = 0;
        const auto t = ace_train(model, Ansatz::circuit2, 2, de, 0, 3);
        CHECK(t.trace.size() == 1);
    }
    SUBCASE("trace is non-increasing") {
        DeConfig de;
        de.population = 10;
        de.generations = 30;
        const auto t = ace_train(model, Ansatz::circuit1, 1, de, 0, 11);
        for (std::size_t g = 1; g < t.trace.size(); ++g)
            CHECK(t.trace[g] <= t.trace[g - 1] + 1e-12);
    }
    SUBCASE("bad config rejected") {
        DeConfig de;
        de.population = 3;
        CHECK_THROWS_AS(ace_train(model, Ansatz::circuit2, 2, de, 0, 0),
                        std::invalid_argument);
    }
}

TEST_CASE("trained parameter persistence and execution") {
    const auto inst = build_instance(table14(), 2);
    const auto model = build_qubo(inst);
    DeConfig de;
    de.population = 10;
    de.generations = 20;
    const auto trained = ace_train(model, Ansatz::circuit2, 2, de, 0, 42);

    SUBCASE("reloading theta reproduces the trained energy") {
        const std::string path = "trained_params_test.json";
        trained.save(path);
        const auto back = TrainedParams::load(path);
        std::remove(path.c_str());
        CHECK(back.spec.params == trained.spec.params);
        CHECK(back.model_fingerprint == model.fingerprint());
        const auto dist = measure(run_circuit(back.spec), 0, 0);
        const auto x = decode_distribution(dist, model.variable_count());
        CHECK(model.energy(x) == doctest::Approx(trained.best_energy).epsilon(1e-9));
    }
    SUBCASE("execute only improves on the trained energy") {
        const auto rep = ace_execute(trained, model, inst, 0, 42);
        CHECK(rep.energy <= trained.best_energy + 1e-12);
    }
    SUBCASE("execute is deterministic in exact mode") {
        const auto r1 = ace_execute(trained, model, inst, 0, 7);
        const auto r2 = ace_execute(trained, model, inst, 0, 7);
        CHECK(r1.best == r2.best);
        CHECK(r1.energy == r2.energy);
    }
    SUBCASE("size mismatch is rejected") {
        const auto inst3 = build_instance(table14(), 9);
        const auto model3 = build_qubo(inst3);
        CHECK_THROWS_AS(ace_execute(trained, model3, inst3, 0, 0),
                        std::invalid_argument);
    }
}
