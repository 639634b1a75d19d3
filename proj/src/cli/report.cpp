// report.cpp — CSV/JSON serialization of command reports

#include "spinent/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace spinent::cli {

void Report::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw Error("report row has " + std::to_string(row.size()) + " cells, expected " +
                    std::to_string(columns.size()));
    rows.push_back(std::move(row));
}

void Report::add_meta(std::string key, Cell value) {
    metadata.emplace_back(std::move(key), std::move(value));
}

const std::vector<std::string>& known_commands() {
    static const std::vector<std::string> names = {"evolve", "steady", "sweep",       "border",
                                                   "optimum", "events", "oracle-check"};
    return names;
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string cell_text(const Cell& c) {
    if (const double* d = std::get_if<double>(&c)) return format_number(*d);
    return std::get<std::string>(c);
}

std::string single_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    std::replace(s.begin(), s.end(), '\r', ' ');
    return s;
}

nlohmann::ordered_json cell_json(const Cell& c) {
    if (const double* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) return nullptr;
        return *d;
    }
    return std::get<std::string>(c);
}

Cell cell_from_json(const nlohmann::ordered_json& j) {
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    if (j.is_number()) return j.get<double>();
    return j.get<std::string>();
}

bool is_cell(const nlohmann::ordered_json& j) { return j.is_null() || j.is_number() || j.is_string(); }

} // namespace

std::string to_csv(const Report& r) {
    std::string out = "# command: " + r.command + "\n";
    for (const auto& [key, value] : r.metadata) out += "# " + key + ": " + single_line(cell_text(value)) + "\n";
    for (const std::string& w : r.warnings) out += "# warning: " + single_line(w) + "\n";
    for (std::size_t k = 0; k < r.columns.size(); ++k) out += (k ? "," : "") + csv_field(r.columns[k]);
    out += "\n";
    for (const auto& row : r.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) out += (k ? "," : "") + csv_field(cell_text(row[k]));
        out += "\n";
    }
    return out;
}

nlohmann::ordered_json to_json(const Report& r) {
    nlohmann::ordered_json j;
    j["command"] = r.command;
    j["columns"] = r.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        auto jr = nlohmann::ordered_json::array();
        for (const Cell& c : row) jr.push_back(cell_json(c));
        rows.push_back(std::move(jr));
    }
    j["rows"] = std::move(rows);
    auto meta = nlohmann::ordered_json::object();
    for (const auto& [key, value] : r.metadata) meta[key] = cell_json(value);
    j["metadata"] = std::move(meta);
    j["warnings"] = r.warnings;
    return j;
}

std::string to_json_text(const Report& r) { return to_json(r).dump(2) + "\n"; }

void validate_report(const nlohmann::ordered_json& j) {
    static const std::vector<std::string> keys = {"command", "columns", "rows", "metadata", "warnings"};
    if (!j.is_object()) throw SchemaError("report must be a JSON object");
    for (const auto& [key, value] : j.items())
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw SchemaError("unknown report key '" + key + "'");
    for (const std::string& k : keys)
        if (!j.contains(k)) throw SchemaError("report is missing '" + k + "'");

    if (!j["command"].is_string()) throw SchemaError("'command' must be a string");
    const auto& names = known_commands();
    if (std::find(names.begin(), names.end(), j["command"].get<std::string>()) == names.end())
        throw SchemaError("unknown command '" + j["command"].get<std::string>() + "'");

    if (!j["columns"].is_array() || j["columns"].empty()) throw SchemaError("'columns' must be a non-empty array");
    for (const auto& c : j["columns"])
        if (!c.is_string()) throw SchemaError("column names must be strings");

    if (!j["rows"].is_array()) throw SchemaError("'rows' must be an array");
    const std::size_t width = j["columns"].size();
    for (std::size_t k = 0; k < j["rows"].size(); ++k) {
        const auto& row = j["rows"][k];
        if (!row.is_array() || row.size() != width)
            throw SchemaError("row " + std::to_string(k) + " must be an array of " + std::to_string(width) + " cells");
        for (const auto& c : row)
            if (!is_cell(c)) throw SchemaError("row " + std::to_string(k) + " holds a non-scalar cell");
    }

    if (!j["metadata"].is_object()) throw SchemaError("'metadata' must be an object");
    for (const auto& [key, value] : j["metadata"].items())
        if (!is_cell(value)) throw SchemaError("metadata '" + key + "' must be a scalar");

    if (!j["warnings"].is_array()) throw SchemaError("'warnings' must be an array");
    for (const auto& w : j["warnings"])
        if (!w.is_string()) throw SchemaError("warnings must be strings");
}

Report report_from_json(const nlohmann::ordered_json& j) {
    validate_report(j);
    Report r;
    r.command = j["command"].get<std::string>();
    r.columns = j["columns"].get<std::vector<std::string>>();
    for (const auto& row : j["rows"]) {
        std::vector<Cell> cells;
        for (const auto& c : row) cells.push_back(cell_from_json(c));
        r.rows.push_back(std::move(cells));
    }
    for (const auto& [key, value] : j["metadata"].items()) r.metadata.emplace_back(key, cell_from_json(value));
    r.warnings = j["warnings"].get<std::vector<std::string>>();
    return r;
}

} // namespace spinent::cli
