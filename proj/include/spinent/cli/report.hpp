// report.hpp — Tabular command output with CSV and JSON writers and a strict JSON schema check

#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "spinent/errors.hpp"

namespace spinent::cli {

// Numbers are written with 17 significant digits; NaN marks a missing value.
using Cell = std::variant<double, std::string>;

struct Report {
    std::string command;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, Cell>> metadata;  // insertion order is preserved
    std::vector<std::string> warnings;

    void add_row(std::vector<Cell> row);
    void add_meta(std::string key, Cell value);
};

class SchemaError : public Error {
public:
    using Error::Error;
};

const std::vector<std::string>& known_commands();

std::string format_number(double x);  // "%.17g"; "nan", "inf", "-inf" for non-finite values

// '#'-prefixed metadata and warning lines, one header row, one line per row.
std::string to_csv(const Report& r);

nlohmann::ordered_json to_json(const Report& r);
std::string to_json_text(const Report& r);

// Throws SchemaError unless `j` has exactly the keys command, columns, rows, metadata,
// warnings with the expected types, and every row matches the column count.
void validate_report(const nlohmann::ordered_json& j);

// Inverse of to_json after validation.
Report report_from_json(const nlohmann::ordered_json& j);

} // namespace spinent::cli
