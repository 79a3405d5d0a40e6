// Copyright (c) 2026 The chainwatt developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <chainwatt/csv.hpp>
#include <chainwatt/date.hpp>
#include <chainwatt/errors.hpp>
#include <chainwatt/units.hpp>

#include <doctest.h>

#include <sstream>

using namespace chainwatt;

namespace {
doctest::Approx near(double v) { return doctest::Approx(v).epsilon(1e-12); }
} // namespace

TEST_CASE("Date parses strict ISO-8601 and round-trips")
{
    const Date d = Date::parse("2020-02-29");
    CHECK(d.year() == 2020);
    CHECK(d.month() == 2);
    CHECK(d.day() == 29);
    CHECK(d.to_string() == "2020-02-29");
    CHECK(Date::parse("1999-12-31").to_string() == "1999-12-31");
    CHECK(Date(2020, 1, 1).to_string() == "2020-01-01");
}

TEST_CASE("Date rejects malformed and impossible dates")
{
    CHECK_THROWS_AS(Date::parse("2021-02-29"), validation_error); // not a leap year
    CHECK_THROWS_AS(Date::parse("2020-02-30"), validation_error);
    CHECK_THROWS_AS(Date::parse("2020-13-01"), validation_error);
    CHECK_THROWS_AS(Date::parse("2020-00-10"), validation_error);
    CHECK_THROWS_AS(Date::parse("2020-1-01"), validation_error); // not zero-padded
    CHECK_THROWS_AS(Date::parse("20200101"), validation_error);
    CHECK_THROWS_AS(Date::parse("2020/01/01"), validation_error);
    CHECK_THROWS_AS(Date::parse("2020-01-01x"), validation_error);
    CHECK_THROWS_AS(Date::parse(" 2020-01-01"), validation_error);
    CHECK_THROWS_AS(Date::parse(""), validation_error);
    CHECK_THROWS_AS(Date(2021, 2, 29), validation_error);
}

TEST_CASE("Date arithmetic crosses month and year boundaries")
{
    CHECK(Date(2020, 2, 28).next_day() == Date(2020, 2, 29));
    CHECK(Date(2020, 2, 29).next_day() == Date(2020, 3, 1));
    CHECK(Date(2019, 12, 31).next_day() == Date(2020, 1, 1));
    CHECK(Date(2020, 1, 1).plus_days(366) == Date(2021, 1, 1)); // 2020 is a leap year
    CHECK(Date(2020, 1, 1).plus_days(-1) == Date(2019, 12, 31));
    CHECK(Date(2020, 5, 11) - Date(2020, 5, 1) == 10);
    CHECK(Date(2019, 7, 1) - Date(2020, 7, 1) == -366);
    CHECK(Date(2020, 1, 2) > Date(2020, 1, 1));
}

TEST_CASE("ChainSpec bitcoin constants and validation")
{
    const ChainSpec spec = ChainSpec::bitcoin();
    CHECK(spec.name == "bitcoin");
    CHECK(spec.target_block_time_s == 600.0);
    CHECK(spec.retarget_epoch == 2016);
    CHECK(spec.halving_interval == 210000);
    CHECK(spec.initial_subsidy == 50.0);
    CHECK(spec.hashes_per_difficulty_unit == 4294967296.0);
    CHECK(spec.retarget_clamp == 4.0);
    CHECK_NOTHROW(spec.validate());

    ChainSpec bad = spec;
    bad.target_block_time_s = 0.0;
    CHECK_THROWS_AS(bad.validate(), validation_error);
    bad = spec;
    bad.retarget_clamp = 0.5;
    CHECK_THROWS_AS(bad.validate(), validation_error);
    bad = spec;
    bad.retarget_epoch = 0;
    CHECK_THROWS_AS(bad.validate(), validation_error);
}

TEST_CASE("efficiency_of: frozen catalog figures")
{
    // power / hash rate, J/H.
    CHECK(efficiency_of({"AntminerS19Pro", 2020, 110e12, 3250.0}) == 2.9545454545454544e-11);
    CHECK(efficiency_of({"AntminerS9", 2016, 11.5e12, 1375.0}) == 1.1956521739130436e-10);
    CHECK(efficiency_of({"WhatsminerM10S", 2018, 55e12, 3500.0}) == 6.363636363636364e-11);
    CHECK_THROWS_AS(efficiency_of({"broken", 2020, 0.0, 100.0}), validation_error);
}

TEST_CASE("unit conversions: frozen values and inverses")
{
    // 8766 h per mean year.
    CHECK(watts_to_twh_per_year(6.85e9) == near(60.0471));
    CHECK(watts_to_twh_per_year(3e9) == near(26.298));
    CHECK(twh_per_year_to_watts(100.0) == near(11407711613.050423));
    CHECK(joules_to_kwh(1.5e9) == near(416.6666666666667));
    CHECK(watts_to_twh_per_year(0.0) == 0.0);
    CHECK_THROWS_AS(watts_to_twh_per_year(-1.0), validation_error);
    CHECK_THROWS_AS(twh_per_year_to_watts(-1.0), validation_error);
    CHECK_THROWS_AS(joules_to_kwh(-1.0), validation_error);
    for (double w : {1.0, 3.3e9, 1.4e10}) {
        CHECK(twh_per_year_to_watts(watts_to_twh_per_year(w)) == near(w));
    }
}

TEST_CASE("EnergyEstimate::from_power derives the annual figure")
{
    const EnergyEstimate e =
        EnergyEstimate::from_power(6.85e9, BoundKind::upper, {{"tariff_usd_per_kwh", 0.05}});
    CHECK(e.power_w == 6.85e9);
    CHECK(e.annual_twh == watts_to_twh_per_year(6.85e9));
    CHECK(e.kind == BoundKind::upper);
    CHECK(e.assumptions.at("tariff_usd_per_kwh") == 0.05);
    CHECK_THROWS_AS(EnergyEstimate::from_power(-1.0, BoundKind::lower), validation_error);
    CHECK(std::string(to_string(BoundKind::lower)) == "lower");
    CHECK(std::string(to_string(BoundKind::upper)) == "upper");
    CHECK(std::string(to_string(BoundKind::best_guess)) == "best_guess");
    CHECK(std::string(to_string(BoundKind::simulated)) == "simulated");
}

TEST_CASE("csv reader: comments, blanks, CRLF, ragged rows")
{
    std::istringstream in("# comment\n"
                          "\n"
                          "a,b,c\r\n"
                          "1,2,3\n"
                          "# mid-file comment\n"
                          "4,5,6\r\n");
    const csv::Table t = csv::read_stream(in, "mem.csv");
    REQUIRE(t.columns.size() == 3);
    CHECK(t.columns[1] == "b");
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][2] == "3");
    CHECK(t.rows[1][0] == "4");
    CHECK(t.row_lines[0] == 4);
    CHECK(t.row_lines[1] == 6);
    CHECK(t.column_index("c") == 2);
    CHECK(t.optional_column_index("zz") == csv::Table::npos);
    CHECK_THROWS_WITH_AS(t.column_index("zz"),
                         "mem.csv: missing required column 'zz'", validation_error);

    std::istringstream ragged("a,b\n1,2,3\n");
    CHECK_THROWS_WITH_AS(csv::read_stream(ragged, "r.csv"),
                         "r.csv:2: expected 2 cells, found 3", validation_error);

    std::istringstream empty("# nothing but comments\n");
    CHECK_THROWS_WITH_AS(csv::read_stream(empty, "e.csv"), "e.csv: missing header row",
                         validation_error);
}

TEST_CASE("csv numeric cells: parse errors carry origin, line and column")
{
    CHECK(csv::parse_decimal("12.5", "f.csv", 3, "subsidy") == 12.5);
    CHECK(csv::parse_decimal("9.013e+12", "f.csv", 3, "difficulty") == 9.013e12);
    CHECK(csv::parse_integer("-42", "f.csv", 3, "n") == -42);
    CHECK_THROWS_WITH_AS(csv::parse_decimal("12,5", "f.csv", 3, "subsidy"),
                         "f.csv:3: column 'subsidy': invalid decimal '12,5'", validation_error);
    CHECK_THROWS_WITH_AS(csv::parse_decimal("", "f.csv", 9, "price_usd"),
                         "f.csv:9: column 'price_usd': invalid decimal ''", validation_error);
    CHECK_THROWS_WITH_AS(csv::parse_decimal("1.5x", "f.csv", 2, "v"),
                         "f.csv:2: column 'v': invalid decimal '1.5x'", validation_error);
    CHECK_THROWS_AS(csv::parse_integer("1.5", "f.csv", 2, "n"), validation_error);
}

TEST_CASE("csv formatting is the shortest round-trip form")
{
    CHECK(csv::format_decimal(0.05) == "0.05");
    CHECK(csv::format_decimal(12.5) == "12.5");
    CHECK(csv::format_decimal(600.0) == "600");
    CHECK(csv::format_decimal(9.013e12) == "9.013e+12");
    CHECK(csv::format_decimal(1e18) == "1e+18");
    CHECK(csv::format_decimal(0.0001) == "1e-04");
    CHECK(csv::format_decimal(50000.0) == "50000");
    CHECK(csv::format_decimal(1.63e9) == "1.63e+09");
    CHECK(csv::format_decimal(0.0) == "0");
    CHECK(csv::format_decimal(-0.25) == "-0.25");
    CHECK(csv::format_integer(2016) == "2016");
    CHECK(csv::format_integer(-7) == "-7");
    // Round-trip: parse(format(x)) == x bit-for-bit for awkward values.
    for (double v : {13969838619232.178, 1.1956521739130436e-10, 0.1, 1.0 / 3.0, 8766.0}) {
        CHECK(csv::parse_decimal(csv::format_decimal(v), "rt.csv", 1, "v") == v);
    }
}
