// Copyright (c) 2026 The chainwatt developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace chainwatt {

// Energies are carried internally in joules and watts; USD and kWh appear
// only at the interfaces. The year is fixed at 8766 h (365.25 d, mean year
// including leap days); the choice shifts annualized figures by < 0.1%.
inline constexpr double kHoursPerYear = 8766.0;
inline constexpr double kSecondsPerHour = 3600.0;
inline constexpr double kSecondsPerYear = kHoursPerYear * kSecondsPerHour;
inline constexpr double kJoulesPerKwh = 3.6e6;
inline constexpr double kHashesPerExahash = 1e18;

//! Protocol constants of a proof-of-work chain.
struct ChainSpec {
    std::string name = "bitcoin";
    double target_block_time_s = 600.0;
    std::int64_t retarget_epoch = 2016;     //!< blocks between difficulty updates
    std::int64_t halving_interval = 210000; //!< blocks between subsidy halvings
    double initial_subsidy = 50.0;          //!< coins per block at height 0
    double hashes_per_difficulty_unit = 4294967296.0; //!< 2^32, Bitcoin convention
    double retarget_clamp = 4.0;            //!< max per-epoch difficulty ratio

    //! Throws validation_error if any field violates its invariant.
    void validate() const;

    //! Bitcoin mainnet constants.
    static ChainSpec bitcoin();
};

//! A miner device model: nameplate hash rate and electrical power draw.
struct HardwareProfile {
    std::string name;
    int launch_year = 0;
    double hash_rate_hs = 0.0; //!< H/s
    double power_w = 0.0;      //!< W

    void validate() const;
};

//! An electricity price.
struct Tariff {
    double usd_per_kwh = 0.0;

    void validate() const;
};

//! What kind of consumption figure an estimate is.
enum class BoundKind {
    lower,
    upper,
    best_guess,
    simulated,
};

const char* to_string(BoundKind kind);

//! A power figure with its annualized energy and the inputs that produced it.
struct EnergyEstimate {
    double power_w = 0.0;
    double annual_twh = 0.0; //!< always power_w * 8766 h / 1e12
    BoundKind kind = BoundKind::best_guess;
    std::map<std::string, double> assumptions;

    //! Build a consistent estimate from a power figure (annual_twh derived).
    static EnergyEstimate from_power(double power_w, BoundKind kind,
                                     std::map<std::string, double> assumptions = {});
};

//! Energy per hash of a device, J/H.
double efficiency_of(const HardwareProfile& profile);

//! Annualize a constant power draw. Rejects negative power.
double watts_to_twh_per_year(double power_w);

//! Inverse of watts_to_twh_per_year. Rejects negative energy.
double twh_per_year_to_watts(double twh_per_year);

//! Convert joules to kilowatt-hours. Rejects negative energy.
double joules_to_kwh(double joules);

} // namespace chainwatt
