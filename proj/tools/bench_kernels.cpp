// Copyright (c) 2026 The chainwatt developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

//! Benchmark for the batch kernels: runs each one with the serial reference
//! implementation and the OpenMP version, reports wall times, and checks that
//! both produce bit-identical results.

#include <chainwatt/batch.hpp>
#include <chainwatt/date.hpp>
#include <chainwatt/estimators.hpp>
#include <chainwatt/units.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cw = chainwatt;

namespace {

cw::estimators::MarketSeries synthetic_market(std::size_t rows, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> price_jitter(0.9, 1.1);
    std::uniform_real_distribution<double> difficulty_jitter(0.95, 1.05);
    cw::estimators::MarketSeries series;
    series.has_fees_column = true;
    series.has_hash_rate_column = true;
    cw::Date day(2019, 7, 1);
    double price = 9000.0;
    double difficulty = 9.0e12;
    for (std::size_t i = 0; i < rows; ++i) {
        price = std::max(1000.0, price * price_jitter(rng));
        if (i % 14 == 13) difficulty *= difficulty_jitter(rng);
        cw::estimators::MarketSample sample;
        sample.date = day;
        sample.price_usd = price;
        sample.difficulty = difficulty;
        sample.subsidy = 12.5;
        sample.fees_per_block = 0.4;
        sample.observed_hash_rate_hs = difficulty * 4294967296.0 / 600.0;
        series.samples.push_back(sample);
        day = day.next_day();
    }
    return series;
}

template <typename Fn>
double time_best_of(int reps, Fn&& fn)
{
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        const auto stop = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(stop - start).count());
    }
    return best;
}

bool bit_equal(double a, double b)
{
    return a == b && std::signbit(a) == std::signbit(b);
}

void report(const char* kernel, double serial_ms, double parallel_ms, bool match)
{
    std::printf("%-16s %12.3f ms %12.3f ms %8.2fx   %s\n", kernel, serial_ms, parallel_ms,
                serial_ms / parallel_ms, match ? "bit-identical" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"chainwatt batch-kernel benchmark (serial reference vs OpenMP)"};
    std::int64_t rows = 200000;
    std::int64_t samples = 4000000;
    int reps = 3;
    std::uint64_t seed = 20260814;
    app.add_option("--rows", rows, "market rows for bounds/margin kernels");
    app.add_option("--samples", samples, "sample count for the correlation kernel");
    app.add_option("--reps", reps, "repetitions; best time is reported");
    app.add_option("--seed", seed, "RNG seed for the synthetic inputs");
    CLI11_PARSE(app, argc, argv);

    std::mt19937_64 rng(seed);
    const cw::estimators::MarketSeries market =
        synthetic_market(static_cast<std::size_t>(rows), rng);
    const cw::ChainSpec spec = cw::ChainSpec::bitcoin();
    const std::vector<cw::Tariff> tariffs{cw::Tariff{0.025}, cw::Tariff{0.05}, cw::Tariff{0.1}};
    const std::vector<cw::HardwareProfile> devices{
        {"AntminerS9", 2016, 11.5e12, 1375.0},
        {"WhatsminerM10S", 2018, 55.0e12, 3500.0},
        {"AntminerS19Pro", 2020, 110.0e12, 3250.0},
    };

#ifdef _OPENMP
    std::printf("OpenMP: %d thread(s)\n", omp_get_max_threads());
#else
    std::printf("OpenMP: disabled at build time (parallel mode falls back to serial)\n");
#endif
    std::printf("rows=%lld samples=%lld reps=%d\n\n", static_cast<long long>(rows),
                static_cast<long long>(samples), reps);
    std::printf("%-16s %15s %15s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        std::vector<cw::batch::BoundsRow> serial_rows, parallel_rows;
        const double serial_ms = time_best_of(reps, [&] {
            serial_rows = cw::batch::bounds_series(market, spec, 2.9545454545454544e-11, tariffs,
                                                   cw::batch::exec::serial);
        });
        const double parallel_ms = time_best_of(reps, [&] {
            parallel_rows = cw::batch::bounds_series(market, spec, 2.9545454545454544e-11, tariffs,
                                                     cw::batch::exec::parallel);
        });
        bool match = serial_rows.size() == parallel_rows.size();
        for (std::size_t i = 0; match && i < serial_rows.size(); ++i) {
            match = bit_equal(serial_rows[i].lower_twh, parallel_rows[i].lower_twh);
            for (std::size_t j = 0; match && j < tariffs.size(); ++j) {
                match = bit_equal(serial_rows[i].upper_twh[j], parallel_rows[i].upper_twh[j]);
            }
        }
        report("bounds", serial_ms, parallel_ms, match);
    }

    {
        std::vector<cw::batch::MarginRow> serial_rows, parallel_rows;
        const double serial_ms = time_best_of(reps, [&] {
            serial_rows = cw::batch::margin_series(market, spec, devices, cw::Tariff{0.05},
                                                   cw::batch::exec::serial);
        });
        const double parallel_ms = time_best_of(reps, [&] {
            parallel_rows = cw::batch::margin_series(market, spec, devices, cw::Tariff{0.05},
                                                     cw::batch::exec::parallel);
        });
        bool match = serial_rows.size() == parallel_rows.size();
        for (std::size_t i = 0; match && i < serial_rows.size(); ++i) {
            for (std::size_t j = 0; match && j < devices.size(); ++j) {
                match = bit_equal(serial_rows[i].margins[j], parallel_rows[i].margins[j]);
            }
        }
        report("margin", serial_ms, parallel_ms, match);
    }

    {
        std::vector<double> xs(static_cast<std::size_t>(samples));
        std::vector<double> ys(static_cast<std::size_t>(samples));
        std::normal_distribution<double> noise(0.0, 1.0);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            xs[i] = noise(rng);
            ys[i] = 0.6 * xs[i] + 0.8 * noise(rng);
        }
        double serial_r = 0.0, parallel_r = 0.0;
        const double serial_ms = time_best_of(
            reps, [&] { serial_r = cw::batch::pearson_chunked(xs, ys, cw::batch::exec::serial); });
        const double parallel_ms = time_best_of(reps, [&] {
            parallel_r = cw::batch::pearson_chunked(xs, ys, cw::batch::exec::parallel);
        });
        report("pearson", serial_ms, parallel_ms, bit_equal(serial_r, parallel_r));
        std::printf("\npearson r = %.17g\n", serial_r);
    }

    return 0;
}
