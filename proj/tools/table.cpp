#include "table.hpp"

#include <cmath>
#include <cstdio>

namespace lieprop::cli {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

namespace {

std::string cell_text(const Cell& c) {
    struct {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(long v) const { return std::to_string(v); }
        std::string operator()(const std::string& s) const { return csv_escape(s); }
    } visit;
    return std::visit(visit, c);
}

} // namespace

void Table::write_csv(std::ostream& out) const {
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << csv_escape(columns[i]);
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
        out << "\n";
    }
}

nlohmann::ordered_json Table::to_json() const {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < columns.size(); ++i) {
            const Cell& c = i < row.size() ? row[i] : Cell{};
            std::visit([&](const auto& v) {
                using V = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<V, std::monostate>) obj[columns[i]] = nullptr;
                else obj[columns[i]] = v;
            }, c);
        }
        arr.push_back(std::move(obj));
    }
    return arr;
}

} // namespace lieprop::cli
