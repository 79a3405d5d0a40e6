// Copyright (c) 2026 The chainwatt developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace chainwatt::csv {

//! A parsed CSV file: header names plus raw string cells, with the 1-based
//! source line of every row retained so error messages can point at it.
//!
//! Dialect: comma separated, no quoting (the toolkit's schemas never need
//! commas inside cells), '#' starts a full-line comment, blank lines are
//! skipped, a trailing '\r' (CRLF input) is stripped.
struct Table {
    std::string origin; //!< file name used in diagnostics
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows; //!< each row has columns.size() cells
    std::vector<std::size_t> row_lines;         //!< source line per row

    //! Index of a column; throws validation_error naming the column if absent.
    std::size_t column_index(std::string_view name) const;

    //! Index of a column, or npos when the (optional) column is not present.
    std::size_t optional_column_index(std::string_view name) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

//! Read and tokenize a CSV file; throws io_error if unreadable and
//! validation_error on structural problems (missing header, ragged rows).
Table read_file(const std::string& path);

//! Same, from an already open stream; `origin` labels diagnostics.
Table read_stream(std::istream& in, const std::string& origin);

//! Parse one decimal cell; diagnostics carry origin, line and column name.
double parse_decimal(std::string_view cell, const std::string& origin,
                     std::size_t line, std::string_view column);

//! Parse one integer cell; same diagnostics as parse_decimal.
std::int64_t parse_integer(std::string_view cell, const std::string& origin,
                           std::size_t line, std::string_view column);

//! Canonical decimal rendering: shortest string that round-trips the value
//! exactly (std::to_chars). All CSV output goes through this, which makes
//! re-serialized files byte-stable across platforms.
std::string format_decimal(double value);

//! Canonical integer rendering.
std::string format_integer(std::int64_t value);

} // namespace chainwatt::csv
