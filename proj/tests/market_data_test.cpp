#include <doctest.h>

#include <cmath>
#include <sstream>

#include "arbq/instance.hpp"

using namespace arbq;

namespace {

const ExchangeMatrix& table14() {
    static const ExchangeMatrix m =
        load_matrix(std::string(ARBIQ_DATA_DIR) + "/rates_14.csv");
    return m;
}

int currency_index(const ExchangeMatrix& m, const std::string& code) {
    for (int i = 0; i < m.size(); ++i)
        if (m.currencies[i] == code) return i;
    FAIL("unknown code ", code);
    return -1;
}

}  // namespace

TEST_CASE("shipped 14-currency table parses") {
    const auto& m = table14();
    CHECK(m.size() == 14);
    CHECK(m.currencies.front() == "EUR");
    const int usd = currency_index(m, "USD");
    const int eur = currency_index(m, "EUR");
    CHECK(m.rates[usd][eur] == doctest::Approx(0.8892).epsilon(1e-12));
    CHECK(m.rates[eur][usd] == doctest::Approx(1.1245).epsilon(1e-12));

    int nonzero_offdiag = 0;
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j)
            if (i != j && m.rates[i][j] > 0) ++nonzero_offdiag;
    CHECK(nonzero_offdiag == 86);
}

TEST_CASE("two-currency matrix with no tradable pairs is valid") {
    std::istringstream in(",AAA,BBB\nAAA,1,0\nBBB,0,1\n");
    const auto m = parse_matrix(in, MatrixFormat::csv);
    CHECK(m.size() == 2);
    const auto inst = build_instance(m, 2);
    CHECK(inst.edge_count == 0);
}

TEST_CASE("json format parses") {
    std::istringstream in(
        R"({"currencies":["AAA","BBB"],"rates":[[1,2],[0.5,1]],"timestamp":"t0"})");
    const auto m = parse_matrix(in, MatrixFormat::json);
    CHECK(m.size() == 2);
    CHECK(m.rates[0][1] == 2.0);
    CHECK(m.timestamp == "t0");
}

TEST_CASE("invalid matrices raise typed errors with coordinates") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return parse_matrix(in, MatrixFormat::csv);
    };
    SUBCASE("non-square") {
        CHECK_THROWS_AS(parse(",AAA,BBB\nAAA,1,0,3\nBBB,0,1\n"), ParseError);
    }
    SUBCASE("diagonal not one") {
        try {
            parse(",AAA,BBB\nAAA,1,0\nBBB,0,2\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.row == 1);
            CHECK(e.col == 1);
        }
    }
    SUBCASE("negative rate") {
        try {
            parse(",AAA,BBB\nAAA,1,-2\nBBB,0,1\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.row == 0);
            CHECK(e.col == 1);
        }
    }
    SUBCASE("duplicate code") {
        CHECK_THROWS_AS(parse(",AAA,AAA\nAAA,1,0\nAAA,0,1\n"), ParseError);
    }
    SUBCASE("malformed number") {
        try {
            parse(",AAA,BBB\nAAA,1,x7\nBBB,0,1\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.row == 0);
            CHECK(e.col == 1);
        }
    }
    SUBCASE("lowercase code") {
        CHECK_THROWS_AS(parse(",aaa,BBB\naaa,1,0\nBBB,0,1\n"), ParseError);
    }
    SUBCASE("one currency") {
        CHECK_THROWS_AS(parse(",AAA\nAAA,1\n"), ParseError);
    }
}

TEST_CASE("build_instance weights and edges") {
    const auto& m = table14();
    const auto inst = build_instance(m, 5);
    CHECK(inst.edge_count == 86);
    const int chf = currency_index(m, "CHF");
    const int jpy = currency_index(m, "JPY");
    CHECK(inst.edge_weight(chf, jpy) == doctest::Approx(-std::log(173.576)).epsilon(1e-15));
    for (int i = 0; i < m.size(); ++i) CHECK_FALSE(inst.has_edge(i, i));

    SUBCASE("K out of range") {
        CHECK_THROWS_AS(build_instance(m, 15), std::invalid_argument);
        CHECK_THROWS_AS(build_instance(m, 1), std::invalid_argument);
    }
    SUBCASE("rate 1 gives weight 0") {
        std::istringstream in(",AAA,BBB\nAAA,1,1\nBBB,0,1\n");
        const auto m2 = parse_matrix(in, MatrixFormat::csv);
        const auto i2 = build_instance(m2, 2);
        CHECK(i2.edge_weight(0, 1) == 0.0);
    }
}

TEST_CASE("exp(-weight) reproduces every rate") {
    const auto inst = build_instance(table14(), 3);
    for (int i = 0; i < inst.currency_count(); ++i)
        for (int j : inst.out_edges[i]) {
            const double back = std::exp(-inst.edge_weight(i, j));
            CHECK(std::abs(back - inst.matrix.rates[i][j]) <=
                  1e-12 * inst.matrix.rates[i][j]);
        }
}
