#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace lieprop::cli {

using Cell = std::variant<std::monostate, double, long, std::string>;

/// Rectangular result table written as CSV (RFC 4180, 17 significant digits) or as a JSON
/// array of objects with keys in column order.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
    void write_csv(std::ostream& out) const;
    nlohmann::ordered_json to_json() const;
};

std::string format_double(double v);
std::string csv_escape(const std::string& s);

} // namespace lieprop::cli
