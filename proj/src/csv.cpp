// Copyright (c) 2026 The chainwatt developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <chainwatt/csv.hpp>

#include <chainwatt/errors.hpp>

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

namespace chainwatt::csv {

namespace {

std::vector<std::string> split_cells(const std::string& line)
{
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return cells;
}

std::string cell_context(const std::string& origin, std::size_t line, std::string_view column)
{
    return origin + ":" + std::to_string(line) + ": column '" + std::string(column) + "'";
}

} // namespace

std::size_t Table::column_index(std::string_view name) const
{
    const std::size_t idx = optional_column_index(name);
    if (idx == npos) {
        throw validation_error(origin + ": missing required column '" + std::string(name) + "'");
    }
    return idx;
}

std::size_t Table::optional_column_index(std::string_view name) const
{
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return i;
    }
    return npos;
}

Table read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io_error("cannot open '" + path + "' for reading");
    }
    return read_stream(in, path);
}

Table read_stream(std::istream& in, const std::string& origin)
{
    Table table;
    table.origin = origin;

    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto cells = split_cells(line);
        if (!have_header) {
            table.columns = std::move(cells);
            have_header = true;
            continue;
        }
        if (cells.size() != table.columns.size()) {
            throw validation_error(origin + ":" + std::to_string(line_no) + ": expected " +
                                   std::to_string(table.columns.size()) + " cells, found " +
                                   std::to_string(cells.size()));
        }
        table.rows.push_back(std::move(cells));
        table.row_lines.push_back(line_no);
    }
    if (in.bad()) {
        throw io_error("read failure on '" + origin + "'");
    }
    if (!have_header) {
        throw validation_error(origin + ": missing header row");
    }
    return table;
}

double parse_decimal(std::string_view cell, const std::string& origin,
                     std::size_t line, std::string_view column)
{
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || cell.empty()) {
        throw validation_error(cell_context(origin, line, column) + ": invalid decimal '" +
                               std::string(cell) + "'");
    }
    return value;
}

std::int64_t parse_integer(std::string_view cell, const std::string& origin,
                           std::size_t line, std::string_view column)
{
    std::int64_t value = 0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || cell.empty()) {
        throw validation_error(cell_context(origin, line, column) + ": invalid integer '" +
                               std::string(cell) + "'");
    }
    return value;
}

std::string format_decimal(double value)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec; // 64 bytes always suffice for a double
    return std::string(buf, ptr);
}

std::string format_integer(std::int64_t value)
{
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace chainwatt::csv
