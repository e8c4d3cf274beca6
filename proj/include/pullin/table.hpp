#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace pullin {

/// Shortest decimal string that round-trips the double exactly, capped at 17
/// significant digits (std::to_chars). Identical inputs always produce
/// identical bytes, which the emitted files rely on.
std::string format_shortest(double x);

/// One table cell: empty (not applicable), a number, a count, or a marker /
/// label string such as "regime-error".
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

/// Uniform shape behind every command output. CSV renders params as leading
/// '#' comment lines, then the header row and records, then outcome as
/// trailing '#' footer lines; JSON mirrors it as {params, rows, outcome}.
struct Table {
    std::vector<std::pair<std::string, Cell>> params;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, Cell>> outcome;
};

void write_csv(const Table& t, std::ostream& out);
void write_json(const Table& t, std::ostream& out);

} // namespace pullin
