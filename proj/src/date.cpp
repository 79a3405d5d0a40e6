// Copyright (c) 2026 The chainwatt developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <chainwatt/date.hpp>

#include <chainwatt/errors.hpp>

#include <cctype>
#include <charconv>
#include <cstdio>

namespace chainwatt {

namespace {

std::chrono::year_month_day make_ymd(int year, unsigned month, unsigned day)
{
    const std::chrono::year_month_day ymd{std::chrono::year{year},
                                          std::chrono::month{month},
                                          std::chrono::day{day}};
    if (!ymd.ok()) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "invalid calendar date %04d-%02u-%02u", year, month, day);
        throw validation_error(buf);
    }
    return ymd;
}

} // namespace

Date::Date(int year, unsigned month, unsigned day)
    : days_(std::chrono::sys_days{make_ymd(year, month, day)})
{
}

Date Date::parse(std::string_view text)
{
    // Strict "YYYY-MM-DD": four digits, dash, two digits, dash, two digits.
    const auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
    bool shape_ok = text.size() == 10 && text[4] == '-' && text[7] == '-';
    if (shape_ok) {
        for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
            if (!is_digit(text[i])) {
                shape_ok = false;
                break;
            }
        }
    }
    if (!shape_ok) {
        throw validation_error("invalid date '" + std::string(text) + "': expected YYYY-MM-DD");
    }
    const auto to_int = [&](std::size_t pos, std::size_t len) {
        int value = 0;
        std::from_chars(text.data() + pos, text.data() + pos + len, value);
        return value;
    };
    return Date(to_int(0, 4), static_cast<unsigned>(to_int(5, 2)), static_cast<unsigned>(to_int(8, 2)));
}

std::string Date::to_string() const
{
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", year(), month(), day());
    return buf;
}

int Date::year() const
{
    return static_cast<int>(std::chrono::year_month_day{days_}.year());
}

unsigned Date::month() const
{
    return static_cast<unsigned>(std::chrono::year_month_day{days_}.month());
}

unsigned Date::day() const
{
    return static_cast<unsigned>(std::chrono::year_month_day{days_}.day());
}

Date Date::next_day() const
{
    return plus_days(1);
}

Date Date::plus_days(std::int64_t days) const
{
    return Date(days_ + std::chrono::days{days});
}

std::int64_t Date::operator-(const Date& other) const
{
    return (days_ - other.days_).count();
}

} // namespace chainwatt
