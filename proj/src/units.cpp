// Copyright (c) 2026 The chainwatt developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <chainwatt/units.hpp>

#include <chainwatt/errors.hpp>

#include <utility>

namespace chainwatt {

void ChainSpec::validate() const
{
    if (!(target_block_time_s > 0)) throw validation_error("chain spec: target_block_time_s must be > 0");
    if (retarget_epoch < 1) throw validation_error("chain spec: retarget_epoch must be >= 1");
    if (halving_interval < 1) throw validation_error("chain spec: halving_interval must be >= 1");
    if (!(initial_subsidy >= 0)) throw validation_error("chain spec: initial_subsidy must be >= 0");
    if (!(hashes_per_difficulty_unit > 0)) throw validation_error("chain spec: hashes_per_difficulty_unit must be > 0");
    if (!(retarget_clamp >= 1)) throw validation_error("chain spec: retarget_clamp must be >= 1");
}

ChainSpec ChainSpec::bitcoin()
{
    return ChainSpec{}; // the defaults are the Bitcoin mainnet constants
}

void HardwareProfile::validate() const
{
    if (!(hash_rate_hs > 0)) throw validation_error("hardware '" + name + "': hash_rate must be > 0");
    if (!(power_w > 0)) throw validation_error("hardware '" + name + "': power must be > 0");
}

void Tariff::validate() const
{
    if (!(usd_per_kwh >= 0)) throw validation_error("tariff: usd_per_kwh must be >= 0");
}

const char* to_string(BoundKind kind)
{
    switch (kind) {
    case BoundKind::lower: return "lower";
    case BoundKind::upper: return "upper";
    case BoundKind::best_guess: return "best_guess";
    case BoundKind::simulated: return "simulated";
    }
    return "unknown";
}

EnergyEstimate EnergyEstimate::from_power(double power_w, BoundKind kind,
                                          std::map<std::string, double> assumptions)
{
    if (!(power_w >= 0)) throw validation_error("energy estimate: power must be >= 0");
    EnergyEstimate e;
    e.power_w = power_w;
    e.annual_twh = watts_to_twh_per_year(power_w);
    e.kind = kind;
    e.assumptions = std::move(assumptions);
    return e;
}

double efficiency_of(const HardwareProfile& profile)
{
    profile.validate();
    return profile.power_w / profile.hash_rate_hs;
}

double watts_to_twh_per_year(double power_w)
{
    if (!(power_w >= 0)) throw validation_error("watts_to_twh_per_year: power must be >= 0");
    // W * 8766 h = Wh per year; 1 TWh = 1e12 Wh.
    return power_w * kHoursPerYear / 1e12;
}

double twh_per_year_to_watts(double twh_per_year)
{
    if (!(twh_per_year >= 0)) throw validation_error("twh_per_year_to_watts: energy must be >= 0");
    return twh_per_year * 1e12 / kHoursPerYear;
}

double joules_to_kwh(double joules)
{
    if (!(joules >= 0)) throw validation_error("joules_to_kwh: energy must be >= 0");
    return joules / kJoulesPerKwh;
}

} // namespace chainwatt
