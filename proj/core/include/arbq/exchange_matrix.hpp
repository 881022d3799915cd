#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace arbq {

// Data validation error with the offending cell, when known (0-based, -1 = n/a).
struct ParseError : std::runtime_error {
    int row;
    int col;
    explicit ParseError(const std::string& msg, int row = -1, int col = -1)
        : std::runtime_error(msg), row(row), col(col) {}
};

enum class MatrixFormat { csv, json };

// N x N table of exchange rates. rates[i][j] is how many units of currency j
// one unit of currency i buys; 0 means the pair is not directly tradable.
struct ExchangeMatrix {
    std::vector<std::string> currencies;
    std::vector<std::vector<double>> rates;
    std::optional<std::string> timestamp;

    int size() const { return static_cast<int>(currencies.size()); }

    // Throws ParseError on any violated invariant (shape, diagonal, sign,
    // duplicate or malformed currency codes).
    void validate() const;
};

ExchangeMatrix parse_matrix(std::istream& in, MatrixFormat format);

// Dispatches on file extension (.json -> json, anything else -> csv).
ExchangeMatrix load_matrix(const std::string& path);

}  // namespace arbq
