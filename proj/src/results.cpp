#include "fgplate/results.hpp"

#include "fgplate/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fgplate {

using nlohmann::json;

const ResultRow* ResultTable::find(const std::vector<std::pair<std::string, std::string>>& match) const
{
    std::vector<std::pair<int, std::string>> wanted;
    for (const auto& [column, value] : match) {
        const int k = key_index(column);
        if (k < 0) return nullptr;
        wanted.emplace_back(k, value);
    }
    for (const auto& row : rows) {
        bool ok = true;
        for (const auto& [k, value] : wanted) ok = ok && row.keys[static_cast<std::size_t>(k)] == value;
        if (ok) return &row;
    }
    return nullptr;
}

int ResultTable::value_index(const std::string& column) const
{
    for (std::size_t i = 0; i < value_columns.size(); ++i) {
        if (value_columns[i] == column) return static_cast<int>(i);
    }
    return -1;
}

int ResultTable::key_index(const std::string& column) const
{
    for (std::size_t i = 0; i < key_columns.size(); ++i) {
        if (key_columns[i] == column) return static_cast<int>(i);
    }
    return -1;
}

std::string csv_field(const std::string& text)
{
    if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_key(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    return buf;
}

namespace {

std::string fixed5(double v)
{
    if (!std::isfinite(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.5f", v);
    std::string s = buf;
    if (s == "-0.00000") s = "0.00000";
    return s;
}

}  // namespace

void write_csv(std::ostream& out, const ResultTable& table)
{
    bool first = true;
    auto sep = [&] {
        if (!first) out << ',';
        first = false;
    };
    for (const auto& k : table.key_columns) {
        sep();
        out << csv_field(k);
    }
    for (const auto& v : table.value_columns) {
        sep();
        out << csv_field(v);
    }
    out << "\r\n";
    for (const auto& row : table.rows) {
        first = true;
        for (const auto& k : row.keys) {
            sep();
            out << csv_field(k);
        }
        for (double v : row.values) {
            sep();
            out << fixed5(v);
        }
        out << "\r\n";
    }
}

std::string to_csv(const ResultTable& table)
{
    std::ostringstream out;
    write_csv(out, table);
    return out.str();
}

json to_json(const ResultTable& table)
{
    json rows = json::array();
    for (const auto& r : table.rows) rows.push_back({{"keys", r.keys}, {"values", r.values}});
    return {{"name", table.name},
            {"analysis", table.analysis},
            {"key_columns", table.key_columns},
            {"value_columns", table.value_columns},
            {"rows", rows},
            {"provenance", table.provenance}};
}

ResultTable result_table_from_json(const json& doc)
{
    try {
        ResultTable t;
        t.name = doc.at("name").get<std::string>();
        t.analysis = doc.at("analysis").get<std::string>();
        t.key_columns = doc.at("key_columns").get<std::vector<std::string>>();
        t.value_columns = doc.at("value_columns").get<std::vector<std::string>>();
        for (const auto& r : doc.at("rows")) {
            ResultRow row;
            row.keys = r.at("keys").get<std::vector<std::string>>();
            row.values = r.at("values").get<std::vector<double>>();
            if (row.keys.size() != t.key_columns.size() || row.values.size() != t.value_columns.size()) {
                throw ConfigError("result row width does not match the column schema");
            }
            t.rows.push_back(std::move(row));
        }
        t.provenance = doc.value("provenance", json::object());
        return t;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed result table: ") + e.what());
    }
}

void write_outputs(const std::filesystem::path& dir, const std::string& stem, const ResultTable& table)
{
    std::filesystem::create_directories(dir);
    {
        std::ofstream csv(dir / (stem + ".csv"), std::ios::binary);
        if (!csv) throw std::runtime_error("cannot write " + (dir / (stem + ".csv")).string());
        write_csv(csv, table);
    }
    std::ofstream js(dir / (stem + ".json"), std::ios::binary);
    if (!js) throw std::runtime_error("cannot write " + (dir / (stem + ".json")).string());
    js << to_json(table).dump(2) << '\n';
}

std::uint64_t fnv1a64(const std::string& bytes)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t value)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

}  // namespace fgplate
