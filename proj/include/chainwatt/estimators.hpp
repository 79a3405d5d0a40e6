// Copyright (c) 2026 The chainwatt developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <chainwatt/date.hpp>
#include <chainwatt/units.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace chainwatt::estimators {

//! One dated market observation: coin price, protocol difficulty, subsidy,
//! fees and (optionally) the externally reported hash rate.
struct MarketSample {
    Date date;
    double price_usd = 0.0;
    double difficulty = 0.0;
    double subsidy = 0.0; //!< coins per block
    //! Fees per block in coins. Absent means "not recorded" and is treated
    //! as zero by the models; the distinction is kept so files re-serialize
    //! byte-identically.
    std::optional<double> fees_per_block;
    std::optional<double> observed_hash_rate_hs; //!< H/s

    double fees() const { return fees_per_block.value_or(0.0); }

    void validate() const;
};

//! A date-sorted series of market samples.
struct MarketSeries {
    std::vector<MarketSample> samples;
    //! Whether the optional CSV columns were present in the source file;
    //! loaders set these, the renderer honours them.
    bool has_fees_column = false;
    bool has_hash_rate_column = false;

    //! Throws validation_error unless non-empty with strictly increasing dates.
    void validate() const;
};

//! Expected mining revenue per 1e18 hashes on a given day.
struct RewardPerHashPoint {
    Date date;
    double usd_per_exahash = 0.0;
};

//! Expected number of hashes needed for one block: difficulty * 2^32 in the
//! Bitcoin convention.
double expected_hashes_per_block(double difficulty, const ChainSpec& spec);

//! Network hash rate implied by difficulty and the (target or observed)
//! average block time.
double network_hash_rate(double difficulty, double avg_block_time_s, const ChainSpec& spec);

//! Blocks mined per mean year at the target block time.
double blocks_per_year(const ChainSpec& spec);

//! Lower consumption bound: every hash paid at the best available efficiency.
EnergyEstimate lower_bound_power(double hash_rate_hs, double best_efficiency_j_per_h);

//! Upper consumption bound: rational miners spend at most their entire
//! revenue on electricity at the given tariff.
EnergyEstimate upper_bound_power(const MarketSample& sample, const ChainSpec& spec,
                                 const Tariff& tariff);

//! Expected mining revenue in USD per 1e18 hashes.
double revenue_per_exahash(const MarketSample& sample, const ChainSpec& spec);

//! (revenue - electricity cost) / electricity cost for one device.
double relative_margin(const HardwareProfile& profile, const Tariff& tariff,
                       double revenue_rate_usd_per_eh);

//! The tariff at which relative_margin is exactly zero.
double breakeven_tariff(const HardwareProfile& profile, double revenue_rate_usd_per_eh);

//! Remaining revenue fraction after `halvings` subsidy halvings when fees
//! contribute `fee_share` of today's revenue and stay constant in absolute
//! terms: (1 - fee_share) * 2^-halvings + fee_share.
double halving_fraction(double fee_share, std::int64_t halvings);

//! Limit of halving_fraction as halvings grow without bound.
double halving_floor(double fee_share);

//! Consumption projected through `halvings` future halvings.
double project_consumption(double current_twh, double fee_share, std::int64_t halvings);

//! Fees per block that make fees contribute `fee_share` of total revenue at
//! the given subsidy: F = B * f / (1 - f). Convenience for "% of reward"
//! style inputs; requires fee_share in [0, 1).
double fees_from_share(double subsidy, double fee_share);

//! Sample Pearson correlation coefficient of two equal-length series.
double pearson_correlation(std::span<const double> a, std::span<const double> b);

//! Ledger storage growth under a transaction-rate multiplier.
double chain_storage_growth(double base_growth_gb_per_year, double tx_multiplier);

//! Scale a Bitcoin-only estimate to all proof-of-work chains.
double all_pow_consumption(double bitcoin_twh_per_year, double factor);

} // namespace chainwatt::estimators
