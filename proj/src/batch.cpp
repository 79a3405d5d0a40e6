// Copyright (c) 2026 The chainwatt developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <chainwatt/batch.hpp>

#include <chainwatt/errors.hpp>

#include <cmath>
#include <cstdint>
#include <exception>
#include <string>

namespace chainwatt::batch {

namespace {

constexpr std::size_t kChunk = 4096;

//! Run `body(i)` for i in [0, n), serially or with OpenMP. Exceptions thrown
//! by the body are captured and rethrown on the calling thread, since letting
//! one escape an OpenMP region would terminate the process.
template <typename Body>
void for_each_index(std::size_t n, exec mode, Body&& body)
{
    if (mode == exec::serial) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr error;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical
            {
                if (!error) error = std::current_exception();
            }
        }
    }
    if (error) std::rethrow_exception(error);
}

} // namespace

std::vector<BoundsRow> bounds_series(const estimators::MarketSeries& series,
                                     const ChainSpec& spec, double efficiency_j_per_h,
                                     std::span<const Tariff> tariffs, exec mode)
{
    series.validate();
    spec.validate();
    if (!(efficiency_j_per_h > 0)) throw validation_error("bounds_series: efficiency must be > 0");
    for (const Tariff& t : tariffs) {
        if (!(t.usd_per_kwh > 0)) throw validation_error("bounds_series: tariffs must be > 0");
    }

    std::vector<BoundsRow> rows(series.samples.size());
    for_each_index(series.samples.size(), mode, [&](std::size_t i) {
        const estimators::MarketSample& s = series.samples[i];
        BoundsRow row;
        row.date = s.date;
        const double hash_rate =
            estimators::network_hash_rate(s.difficulty, spec.target_block_time_s, spec);
        row.lower_twh = estimators::lower_bound_power(hash_rate, efficiency_j_per_h).annual_twh;
        row.upper_twh.reserve(tariffs.size());
        for (const Tariff& t : tariffs) {
            row.upper_twh.push_back(estimators::upper_bound_power(s, spec, t).annual_twh);
        }
        rows[i] = std::move(row);
    });
    return rows;
}

std::vector<MarginRow> margin_series(const estimators::MarketSeries& series,
                                     const ChainSpec& spec,
                                     std::span<const HardwareProfile> profiles,
                                     const Tariff& tariff, exec mode)
{
    series.validate();
    spec.validate();
    if (profiles.empty()) throw validation_error("margin_series: no hardware profiles given");
    for (const HardwareProfile& p : profiles) p.validate();
    if (!(tariff.usd_per_kwh > 0)) throw validation_error("margin_series: tariff must be > 0");

    std::vector<MarginRow> rows(series.samples.size());
    for_each_index(series.samples.size(), mode, [&](std::size_t i) {
        const estimators::MarketSample& s = series.samples[i];
        MarginRow row;
        row.date = s.date;
        const double revenue_rate = estimators::revenue_per_exahash(s, spec);
        row.margins.reserve(profiles.size());
        for (const HardwareProfile& p : profiles) {
            row.margins.push_back(estimators::relative_margin(p, tariff, revenue_rate));
        }
        rows[i] = std::move(row);
    });
    return rows;
}

std::vector<double> revenue_series(const estimators::MarketSeries& series, const ChainSpec& spec,
                                   exec mode)
{
    series.validate();
    spec.validate();
    std::vector<double> rates(series.samples.size());
    for_each_index(series.samples.size(), mode, [&](std::size_t i) {
        rates[i] = estimators::revenue_per_exahash(series.samples[i], spec);
    });
    return rates;
}

double pearson_chunked(std::span<const double> a, std::span<const double> b, exec mode)
{
    if (a.size() != b.size()) {
        throw validation_error("pearson_chunked: series lengths differ (" +
                               std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    }
    if (a.size() < 2) throw validation_error("pearson_chunked: need at least 2 samples");

    const std::size_t chunks = (a.size() + kChunk - 1) / kChunk;
    const auto chunk_range = [&](std::size_t c) {
        const std::size_t begin = c * kChunk;
        const std::size_t end = std::min(begin + kChunk, a.size());
        return std::pair{begin, end};
    };

    // Pass 1: per-chunk sums, combined in chunk order.
    std::vector<double> sum_a(chunks, 0.0);
    std::vector<double> sum_b(chunks, 0.0);
    for_each_index(chunks, mode, [&](std::size_t c) {
        const auto [begin, end] = chunk_range(c);
        double sa = 0.0;
        double sb = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            sa += a[i];
            sb += b[i];
        }
        sum_a[c] = sa;
        sum_b[c] = sb;
    });
    double mean_a = 0.0;
    double mean_b = 0.0;
    for (std::size_t c = 0; c < chunks; ++c) {
        mean_a += sum_a[c];
        mean_b += sum_b[c];
    }
    mean_a /= static_cast<double>(a.size());
    mean_b /= static_cast<double>(b.size());

    // Pass 2: per-chunk centered moments, combined in chunk order.
    std::vector<double> cov(chunks, 0.0);
    std::vector<double> var_a(chunks, 0.0);
    std::vector<double> var_b(chunks, 0.0);
    for_each_index(chunks, mode, [&](std::size_t c) {
        const auto [begin, end] = chunk_range(c);
        double sc = 0.0;
        double sa = 0.0;
        double sb = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            const double da = a[i] - mean_a;
            const double db = b[i] - mean_b;
            sc += da * db;
            sa += da * da;
            sb += db * db;
        }
        cov[c] = sc;
        var_a[c] = sa;
        var_b[c] = sb;
    });
    double total_cov = 0.0;
    double total_var_a = 0.0;
    double total_var_b = 0.0;
    for (std::size_t c = 0; c < chunks; ++c) {
        total_cov += cov[c];
        total_var_a += var_a[c];
        total_var_b += var_b[c];
    }
    if (total_var_a == 0.0 || total_var_b == 0.0) {
        throw validation_error("pearson_chunked: zero-variance series, coefficient undefined");
    }
    const double r = total_cov / std::sqrt(total_var_a * total_var_b);
    return std::min(1.0, std::max(-1.0, r));
}

} // namespace chainwatt::batch
