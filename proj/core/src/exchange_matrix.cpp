#include "arbq/exchange_matrix.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace arbq {

namespace {

bool valid_code(const std::string& code) {
    if (code.empty()) return false;
    for (char c : code) {
        if (!std::isupper(static_cast<unsigned char>(c)) &&
            !std::isdigit(static_cast<unsigned char>(c)))
            return false;
    }
    return true;
}

// Locale-independent decimal parse of the full token.
double parse_rate(const std::string& token, int row, int col) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ParseError("malformed number '" + token + "' at row " + std::to_string(row) +
                             ", column " + std::to_string(col),
                         row, col);
    return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim surrounding whitespace
        auto b = field.find_first_not_of(" \t\r");
        auto e = field.find_last_not_of(" \t\r");
        fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

ExchangeMatrix parse_csv(std::istream& in) {
    ExchangeMatrix m;
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty input");
    auto header = split_csv_line(line);
    if (header.size() < 3 || !header[0].empty())
        throw ParseError("CSV header must start with an empty cell followed by currency codes");
    m.currencies.assign(header.begin() + 1, header.end());

    int row = 0;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != m.currencies.size() + 1)
            throw ParseError("row " + std::to_string(row) + " has " +
                                 std::to_string(fields.size() - 1) + " values, expected " +
                                 std::to_string(m.currencies.size()),
                             row);
        if (static_cast<std::size_t>(row) >= m.currencies.size())
            throw ParseError("unexpected extra row " + std::to_string(row), row);
        if (fields[0] != m.currencies[row])
            throw ParseError("row label '" + fields[0] + "' does not match header order at row " +
                                 std::to_string(row),
                             row);
        std::vector<double> values;
        values.reserve(m.currencies.size());
        for (std::size_t c = 1; c < fields.size(); ++c)
            values.push_back(parse_rate(fields[c], row, static_cast<int>(c - 1)));
        m.rates.push_back(std::move(values));
        ++row;
    }
    m.validate();
    return m;
}

ExchangeMatrix parse_json(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.contains("currencies") || !j.contains("rates"))
        throw ParseError("JSON must contain 'currencies' and 'rates'");
    ExchangeMatrix m;
    try {
        m.currencies = j.at("currencies").get<std::vector<std::string>>();
        m.rates = j.at("rates").get<std::vector<std::vector<double>>>();
        if (j.contains("timestamp") && !j.at("timestamp").is_null())
            m.timestamp = j.at("timestamp").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON matrix: ") + e.what());
    }
    m.validate();
    return m;
}

}  // namespace

void ExchangeMatrix::validate() const {
    const int n = size();
    if (n < 2) throw ParseError("need at least 2 currencies, got " + std::to_string(n));
    std::unordered_set<std::string> seen;
    for (int i = 0; i < n; ++i) {
        if (!valid_code(currencies[i]))
            throw ParseError("invalid currency code '" + currencies[i] + "' at column " +
                                 std::to_string(i),
                             -1, i);
        if (!seen.insert(currencies[i]).second)
            throw ParseError("duplicate currency code '" + currencies[i] + "'", -1, i);
    }
    if (static_cast<int>(rates.size()) != n)
        throw ParseError("matrix has " + std::to_string(rates.size()) + " rows, expected " +
                         std::to_string(n));
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rates[i].size()) != n)
            throw ParseError("row " + std::to_string(i) + " has " +
                                 std::to_string(rates[i].size()) + " columns, expected " +
                                 std::to_string(n),
                             i);
        for (int j = 0; j < n; ++j) {
            const double v = rates[i][j];
            if (i == j && v != 1.0)
                throw ParseError("diagonal entry must be 1 at row " + std::to_string(i) +
                                     ", column " + std::to_string(j),
                                 i, j);
            if (v < 0.0 || !std::isfinite(v))
                throw ParseError("negative or non-finite rate at row " + std::to_string(i) +
                                     ", column " + std::to_string(j),
                                 i, j);
        }
    }
}

ExchangeMatrix parse_matrix(std::istream& in, MatrixFormat format) {
    return format == MatrixFormat::csv ? parse_csv(in) : parse_json(in);
}

ExchangeMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    const bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
    return parse_matrix(in, json ? MatrixFormat::json : MatrixFormat::csv);
}

}  // namespace arbq
