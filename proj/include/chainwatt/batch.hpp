// Copyright (c) 2026 The chainwatt developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <chainwatt/date.hpp>
#include <chainwatt/estimators.hpp>
#include <chainwatt/units.hpp>

#include <span>
#include <vector>

namespace chainwatt::batch {

//! Which implementation of a kernel to run. `serial` is the reference the
//! parallel kernels are checked against; both produce bit-identical results
//! because every output element is computed independently with the same
//! floating-point expression, and reductions combine fixed-size chunks in a
//! fixed order regardless of thread count.
enum class exec {
    serial,
    parallel,
};

//! Per-date consumption bounds: one lower bound plus one upper bound per
//! requested tariff.
struct BoundsRow {
    Date date;
    double lower_twh = 0.0;
    std::vector<double> upper_twh; //!< aligned with the tariffs argument
};

std::vector<BoundsRow> bounds_series(const estimators::MarketSeries& series,
                                     const ChainSpec& spec, double efficiency_j_per_h,
                                     std::span<const Tariff> tariffs, exec mode);

//! Per-date relative margins, one column per hardware profile.
struct MarginRow {
    Date date;
    std::vector<double> margins; //!< aligned with the profiles argument
};

std::vector<MarginRow> margin_series(const estimators::MarketSeries& series,
                                     const ChainSpec& spec,
                                     std::span<const HardwareProfile> profiles,
                                     const Tariff& tariff, exec mode);

//! Per-date expected mining revenue in USD/EH.
std::vector<double> revenue_series(const estimators::MarketSeries& series, const ChainSpec& spec,
                                   exec mode);

//! Pearson correlation over fixed 4096-element chunks. Chunk partial sums
//! are combined in index order, so the result is independent of the thread
//! count and bit-identical between serial and parallel execution.
double pearson_chunked(std::span<const double> a, std::span<const double> b, exec mode);

} // namespace chainwatt::batch
