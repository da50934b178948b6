#include "gwdecohere/cli/table.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace gwd::cli {

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::logic_error("Table " + name + ": row has " + std::to_string(row.size()) +
                               " cells, expected " + std::to_string(columns.size()));
    }
    rows.push_back(std::move(row));
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

std::string csv_cell(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                return format_double(v);
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, std::string>) {
                return csv_escape(v);
            } else {
                std::string joined;
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i) joined += ';';
                    joined += v[i];
                }
                return csv_escape(joined);
            }
        },
        c);
}

nlohmann::ordered_json json_cell(const Cell& c) {
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return format_double(v);
                return v;
            } else {
                return v;
            }
        },
        c);
}

}  // namespace

void write_csv(const Table& t, std::ostream& os) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) os << ',';
        os << csv_escape(t.columns[i]);
    }
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << csv_cell(row[i]);
        }
        os << '\n';
    }
}

void write_json(const Table& t, std::ostream& os) {
    nlohmann::ordered_json doc;
    doc["job"] = t.name;
    doc["columns"] = t.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = json_cell(row[i]);
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    os << doc.dump(2) << '\n';
}

void write_table(const Table& t, OutputFormat fmt, std::ostream& os) {
    if (fmt == OutputFormat::Csv) {
        write_csv(t, os);
    } else {
        write_json(t, os);
    }
}

}  // namespace gwd::cli
