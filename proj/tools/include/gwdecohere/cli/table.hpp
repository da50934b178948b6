#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace gwd::cli {

using Warnings = std::vector<std::string>;
using Cell = std::variant<double, std::int64_t, std::string, Warnings>;

/// Column-oriented result table shared by the CSV and JSON writers.
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

enum class OutputFormat { Csv, Json };

/// Scientific notation with 17 significant digits, '.' decimal separator.
[[nodiscard]] std::string format_double(double x);

/// Header row then one line per row, '\n' endings. Warning lists are joined with ';'.
void write_csv(const Table& t, std::ostream& os);

/// {"job": name, "columns": [...], "rows": [{column: value, ...}, ...]}
void write_json(const Table& t, std::ostream& os);

void write_table(const Table& t, OutputFormat fmt, std::ostream& os);

}  // namespace gwd::cli
