// Copyright (c) 2026 The chainwatt developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <chainwatt/estimators.hpp>
#include <chainwatt/minesim.hpp>
#include <chainwatt/netenergy.hpp>
#include <chainwatt/units.hpp>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chainwatt::ingest {

//! Everything the toolkit reads from disk, loaded and validated.
struct Dataset {
    estimators::MarketSeries market;
    std::vector<HardwareProfile> hardware;
    std::vector<netenergy::NetworkProfile> networks;
};

//! Load a market CSV (date,price_usd,difficulty,subsidy[,fees_per_block]
//! [,hash_rate_ehs]). Rows must be date-ascending; duplicates and unknown
//! columns are rejected with the offending name.
estimators::MarketSeries load_market_csv(const std::string& path);

//! Load a hardware catalog CSV (name,launch_year,hash_rate_ths,power_w).
std::vector<HardwareProfile> load_hardware_csv(const std::string& path);

//! Load a network catalog CSV (name,node_count,energy_per_tx_per_node_j,
//! idle_power_per_node_w,throughput_tps,consensus_overhead_j).
std::vector<netenergy::NetworkProfile> load_networks_csv(const std::string& path);

//! Canonical re-serializations; loading one of these strings again yields
//! the same data, and re-rendering yields the same bytes.
std::string render_market_csv(const estimators::MarketSeries& series);
std::string render_hardware_csv(std::span<const HardwareProfile> profiles);
std::string render_networks_csv(std::span<const netenergy::NetworkProfile> profiles);

//! Find a catalog entry by name; throws validation_error naming it if absent.
const HardwareProfile& find_hardware(std::span<const HardwareProfile> catalog,
                                     std::string_view name);

//! Gap handling for resample_daily.
enum class ResamplePolicy {
    forward_fill, //!< copy the previous sample into missing days
    strict,       //!< reject gaps, listing the missing dates
};

//! Expand a series to exactly one sample per calendar day across its span.
estimators::MarketSeries resample_daily(const estimators::MarketSeries& series,
                                        ResamplePolicy policy);

//! Parse a scenario file (flat `key = value`, '#' comments) into a validated
//! SimConfig. Relative paths inside the scenario (hardware.catalog,
//! price.csv) resolve against the scenario file's directory. See README for
//! the key reference.
minesim::SimConfig load_scenario(const std::string& path);

} // namespace chainwatt::ingest
