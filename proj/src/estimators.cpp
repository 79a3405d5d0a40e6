// Copyright (c) 2026 The chainwatt developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <chainwatt/estimators.hpp>

#include <chainwatt/errors.hpp>

#include <cmath>
#include <string>

namespace chainwatt::estimators {

void MarketSample::validate() const
{
    const std::string ctx = "market sample " + date.to_string();
    if (!(price_usd >= 0)) throw validation_error(ctx + ": price_usd must be >= 0");
    if (!(difficulty > 0)) throw validation_error(ctx + ": difficulty must be > 0");
    if (!(subsidy >= 0)) throw validation_error(ctx + ": subsidy must be >= 0");
    if (fees_per_block && !(*fees_per_block >= 0)) throw validation_error(ctx + ": fees_per_block must be >= 0");
    if (observed_hash_rate_hs && !(*observed_hash_rate_hs >= 0)) {
        throw validation_error(ctx + ": observed hash rate must be >= 0");
    }
}

void MarketSeries::validate() const
{
    if (samples.empty()) throw validation_error("market series: must not be empty");
    samples.front().validate();
    for (std::size_t i = 1; i < samples.size(); ++i) {
        samples[i].validate();
        if (!(samples[i - 1].date < samples[i].date)) {
            throw validation_error("market series: dates must be strictly increasing (offending date " +
                                   samples[i].date.to_string() + ")");
        }
    }
}

double expected_hashes_per_block(double difficulty, const ChainSpec& spec)
{
    spec.validate();
    if (!(difficulty > 0)) throw validation_error("expected_hashes_per_block: difficulty must be > 0");
    return difficulty * spec.hashes_per_difficulty_unit;
}

double network_hash_rate(double difficulty, double avg_block_time_s, const ChainSpec& spec)
{
    if (!(avg_block_time_s > 0)) throw validation_error("network_hash_rate: block time must be > 0");
    return expected_hashes_per_block(difficulty, spec) / avg_block_time_s;
}

double blocks_per_year(const ChainSpec& spec)
{
    spec.validate();
    return kSecondsPerYear / spec.target_block_time_s;
}

EnergyEstimate lower_bound_power(double hash_rate_hs, double best_efficiency_j_per_h)
{
    if (!(hash_rate_hs >= 0)) throw validation_error("lower_bound_power: hash rate must be >= 0");
    if (!(best_efficiency_j_per_h > 0)) throw validation_error("lower_bound_power: efficiency must be > 0");
    const double power_w = hash_rate_hs * best_efficiency_j_per_h;
    return EnergyEstimate::from_power(power_w, BoundKind::lower,
                                      {{"hash_rate_hs", hash_rate_hs},
                                       {"efficiency_j_per_h", best_efficiency_j_per_h}});
}

EnergyEstimate upper_bound_power(const MarketSample& sample, const ChainSpec& spec,
                                 const Tariff& tariff)
{
    sample.validate();
    tariff.validate();
    if (!(tariff.usd_per_kwh > 0)) {
        throw validation_error("upper_bound_power: tariff must be > 0 (free electricity makes the bound infinite)");
    }
    const double bpy = blocks_per_year(spec);
    const double annual_revenue_usd = (sample.subsidy + sample.fees()) * bpy * sample.price_usd;
    // A rational fleet spends at most its full revenue on electricity, buying
    // annual_revenue / tariff kWh per year; average power follows.
    const double annual_kwh = annual_revenue_usd / tariff.usd_per_kwh;
    const double power_w = annual_kwh * 1000.0 / kHoursPerYear;
    return EnergyEstimate::from_power(power_w, BoundKind::upper,
                                      {{"price_usd", sample.price_usd},
                                       {"subsidy", sample.subsidy},
                                       {"fees_per_block", sample.fees()},
                                       {"tariff_usd_per_kwh", tariff.usd_per_kwh},
                                       {"blocks_per_year", bpy}});
}

double revenue_per_exahash(const MarketSample& sample, const ChainSpec& spec)
{
    sample.validate();
    const double hashes = expected_hashes_per_block(sample.difficulty, spec);
    return (sample.subsidy + sample.fees()) * sample.price_usd / hashes * kHashesPerExahash;
}

double relative_margin(const HardwareProfile& profile, const Tariff& tariff,
                       double revenue_rate_usd_per_eh)
{
    profile.validate();
    tariff.validate();
    if (!(tariff.usd_per_kwh > 0)) throw validation_error("relative_margin: tariff must be > 0");
    if (!(revenue_rate_usd_per_eh >= 0)) throw validation_error("relative_margin: revenue rate must be >= 0");
    const double revenue_per_s = revenue_rate_usd_per_eh * profile.hash_rate_hs / kHashesPerExahash;
    const double cost_per_s = profile.power_w * tariff.usd_per_kwh / kJoulesPerKwh;
    return (revenue_per_s - cost_per_s) / cost_per_s;
}

double breakeven_tariff(const HardwareProfile& profile, double revenue_rate_usd_per_eh)
{
    profile.validate();
    if (!(revenue_rate_usd_per_eh >= 0)) throw validation_error("breakeven_tariff: revenue rate must be >= 0");
    return revenue_rate_usd_per_eh * profile.hash_rate_hs * kJoulesPerKwh /
           (kHashesPerExahash * profile.power_w);
}

double halving_fraction(double fee_share, std::int64_t halvings)
{
    if (!(fee_share >= 0 && fee_share <= 1)) throw validation_error("halving_fraction: fee_share must be in [0, 1]");
    if (halvings < 0) throw validation_error("halving_fraction: halvings must be >= 0");
    // ldexp keeps the recurrence (h(n+1) - f) = (h(n) - f)/2 exact in binary.
    const int shift = halvings > 4096 ? -4096 : -static_cast<int>(halvings);
    return std::ldexp(1.0 - fee_share, shift) + fee_share;
}

double halving_floor(double fee_share)
{
    if (!(fee_share >= 0 && fee_share <= 1)) throw validation_error("halving_floor: fee_share must be in [0, 1]");
    return fee_share;
}

double project_consumption(double current_twh, double fee_share, std::int64_t halvings)
{
    if (!(current_twh >= 0)) throw validation_error("project_consumption: current consumption must be >= 0");
    return current_twh * halving_fraction(fee_share, halvings);
}

double fees_from_share(double subsidy, double fee_share)
{
    if (!(subsidy >= 0)) throw validation_error("fees_from_share: subsidy must be >= 0");
    if (!(fee_share >= 0 && fee_share < 1)) throw validation_error("fees_from_share: fee_share must be in [0, 1)");
    return subsidy * fee_share / (1.0 - fee_share);
}

double pearson_correlation(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) {
        throw validation_error("pearson_correlation: series lengths differ (" +
                               std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    }
    if (a.size() < 2) throw validation_error("pearson_correlation: need at least 2 samples");
    const double n = static_cast<double>(a.size());
    double mean_a = 0.0;
    double mean_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= n;
    mean_b /= n;
    double cov = 0.0;
    double var_a = 0.0;
    double var_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - mean_a;
        const double db = b[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0) {
        throw validation_error("pearson_correlation: zero-variance series, coefficient undefined");
    }
    // Rounding can push |r| a hair past 1 for perfectly collinear series.
    const double r = cov / std::sqrt(var_a * var_b);
    return std::min(1.0, std::max(-1.0, r));
}

double chain_storage_growth(double base_growth_gb_per_year, double tx_multiplier)
{
    if (!(base_growth_gb_per_year >= 0)) throw validation_error("chain_storage_growth: base growth must be >= 0");
    if (!(tx_multiplier >= 0)) throw validation_error("chain_storage_growth: multiplier must be >= 0");
    return base_growth_gb_per_year * tx_multiplier;
}

double all_pow_consumption(double bitcoin_twh_per_year, double factor)
{
    if (!(bitcoin_twh_per_year >= 0)) throw validation_error("all_pow_consumption: estimate must be >= 0");
    if (!(factor >= 1)) {
        throw validation_error("all_pow_consumption: factor must be >= 1 (Bitcoin is part of the total)");
    }
    return bitcoin_twh_per_year * factor;
}

} // namespace chainwatt::estimators
