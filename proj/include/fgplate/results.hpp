#pragma once

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace fgplate {

struct ResultRow {
    std::vector<std::string> keys;  // case parameters, one per key column
    std::vector<double> values;     // one per value column

    bool operator==(const ResultRow&) const = default;
};

/// Tabular output: text key columns identify the case, numeric columns hold results.
struct ResultTable {
    std::string name;
    std::string analysis;
    std::vector<std::string> key_columns;
    std::vector<std::string> value_columns;
    std::vector<ResultRow> rows;
    nlohmann::json provenance = nlohmann::json::object();

    bool operator==(const ResultTable&) const = default;

    /// Value in `column` of the first row whose keys match every (column, value) pair.
    const ResultRow* find(const std::vector<std::pair<std::string, std::string>>& match) const;
    int value_index(const std::string& column) const;
    int key_index(const std::string& column) const;
};

/// RFC-4180 CSV, values fixed with five decimals.
void write_csv(std::ostream& out, const ResultTable& table);
std::string to_csv(const ResultTable& table);

nlohmann::json to_json(const ResultTable& table);
ResultTable result_table_from_json(const nlohmann::json& doc);

/// Writes <dir>/<stem>.csv and <dir>/<stem>.json.
void write_outputs(const std::filesystem::path& dir, const std::string& stem, const ResultTable& table);

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t value);

/// Quotes a CSV field when it contains a separator, quote or line break.
std::string csv_field(const std::string& text);

/// Shortest round-trippable-enough text for a case parameter (e.g. "0.5", "10").
std::string format_key(double value);

}  // namespace fgplate
