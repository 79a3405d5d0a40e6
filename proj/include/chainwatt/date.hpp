// Copyright (c) 2026 The chainwatt developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace chainwatt {

//! A calendar date without a time zone. The upstream datasets are daily, so
//! day resolution is all the toolkit ever needs.
class Date {
public:
    Date() = default;

    //! Construct from calendar components; throws validation_error if the
    //! combination does not name a real day (e.g. 2021-02-29).
    Date(int year, unsigned month, unsigned day);

    //! Parse strict ISO-8601 "YYYY-MM-DD"; throws validation_error otherwise.
    static Date parse(std::string_view text);

    //! Render as "YYYY-MM-DD" (zero-padded).
    std::string to_string() const;

    int year() const;
    unsigned month() const;
    unsigned day() const;

    //! The following calendar day.
    Date next_day() const;

    //! Add (or subtract, if negative) a number of days.
    Date plus_days(std::int64_t days) const;

    //! Signed number of days from `other` to `*this`.
    std::int64_t operator-(const Date& other) const;

    auto operator<=>(const Date&) const = default;

private:
    explicit Date(std::chrono::sys_days d) : days_(d) {}

    std::chrono::sys_days days_{};
};

} // namespace chainwatt
