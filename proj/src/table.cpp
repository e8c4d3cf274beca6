#include "pullin/table.hpp"

#include <charconv>
#include <ostream>

#include <json.hpp>

namespace pullin {

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string cell_text(const Cell& c) {
    if (std::holds_alternative<std::monostate>(c)) return "";
    if (const double* d = std::get_if<double>(&c)) return format_shortest(*d);
    if (const std::int64_t* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    return csv_escape(std::get<std::string>(c));
}

nlohmann::ordered_json cell_json(const Cell& c) {
    if (std::holds_alternative<std::monostate>(c)) return nullptr;
    if (const double* d = std::get_if<double>(&c)) return *d;
    if (const std::int64_t* i = std::get_if<std::int64_t>(&c)) return *i;
    return std::get<std::string>(c);
}

} // namespace

std::string format_shortest(double x) {
    // chars_format::general, not the plain overload: the plain one switches
    // to fixed notation whenever that is a character shorter, which for
    // magnitudes around 1e20 emits more than 17 digits. general keeps the
    // shortest round-trip mantissa in every regime.
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general);
    return std::string(buf, res.ptr);
}

void write_csv(const Table& t, std::ostream& out) {
    for (const auto& [key, value] : t.params)
        out << "# " << key << " = " << cell_text(value) << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        out << (i ? "," : "") << csv_escape(t.columns[i]);
    out << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << cell_text(row[i]);
        out << "\n";
    }
    for (const auto& [key, value] : t.outcome)
        out << "# " << key << " = " << cell_text(value) << "\n";
}

void write_json(const Table& t, std::ostream& out) {
    nlohmann::ordered_json j;
    auto& params = j["params"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : t.params) params[key] = cell_json(value);
    auto& rows = j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json rec = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i)
            rec[t.columns[i]] = cell_json(row[i]);
        rows.push_back(std::move(rec));
    }
    auto& outcome = j["outcome"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : t.outcome) outcome[key] = cell_json(value);
    out << j.dump(2) << "\n";
}

} // namespace pullin
