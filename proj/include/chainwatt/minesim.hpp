// Copyright (c) 2026 The chainwatt developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <chainwatt/date.hpp>
#include <chainwatt/estimators.hpp>
#include <chainwatt/units.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace chainwatt::minesim {

//! A block of mining capacity that enters or leaves the market as one unit.
//! All-or-nothing cohorts with a hysteresis band reproduce the observed
//! step-like hash-rate moves while keeping the model deterministic.
struct MinerCohort {
    std::string id;
    HardwareProfile hardware;
    Tariff tariff;
    double capacity_hs = 0.0; //!< H/s contributed when active
    bool active = true;

    void validate() const;
};

//! When cohorts re-evaluate whether mining is worthwhile.
enum class DecisionCadence {
    per_epoch, //!< once per retarget epoch, at its start
    per_day,   //!< at every simulated day boundary (and at epoch starts)
};

//! Full description of a simulator run.
struct SimConfig {
    ChainSpec spec;
    std::vector<MinerCohort> cohorts;
    //! Exogenous price (and fee) path. Samples are looked up by calendar
    //! day: the last sample on or before the query date applies, clamped to
    //! the first sample before the series starts. A single sample therefore
    //! models a constant price. The difficulty/subsidy cells of the path are
    //! ignored; the simulator tracks its own.
    estimators::MarketSeries price_path;
    double start_difficulty = 0.0;
    std::int64_t duration_epochs = 0;
    double hysteresis = 0.0; //!< margin band within which cohorts stay put
    DecisionCadence cadence = DecisionCadence::per_epoch;
    Date start_date = Date(2020, 1, 1);

    void validate() const;
};

//! One retarget epoch of simulator output. For per_day cadence the margins
//! and active flags are those of the last decision taken inside the epoch,
//! consistent with the reported hash rate and power.
struct SimRecord {
    std::int64_t epoch = 0;
    double sim_time_s = 0.0; //!< epoch start
    double duration_s = 0.0; //!< epoch length; 0 on a stalled terminal record
    std::int64_t height = 0; //!< epoch start height
    double difficulty = 0.0;
    double hash_rate_hs = 0.0;
    double power_w = 0.0;
    double subsidy = 0.0;            //!< coins/block in force during the epoch
    double revenue_per_eh = 0.0;     //!< USD/EH at the deciding difficulty
    bool stalled = false;
    std::vector<double> margins;        //!< aligned with SimTrace::cohort_ids
    std::vector<std::uint8_t> active;   //!< idem
};

//! Complete run output.
struct SimTrace {
    std::vector<std::string> cohort_ids;
    std::vector<SimRecord> records;
    bool stalled = false; //!< the run ended because nobody was mining
};

//! Headline statistics of a trace.
struct TraceSummary {
    double mean_power_w = 0.0; //!< time-weighted
    double min_power_w = 0.0;
    double max_power_w = 0.0;
    double total_energy_j = 0.0;
    //! Correlation between per-epoch revenue rate and hash rate; absent for
    //! traces shorter than 2 epochs or with zero variance.
    std::optional<double> revenue_hash_correlation;
    std::vector<EnergyEstimate> per_epoch;
};

//! Coins created per block at a given height.
double block_subsidy(std::int64_t height, const ChainSpec& spec);

//! Total coins created by all blocks below `height` (closed form per era).
double cumulative_supply(std::int64_t height, const ChainSpec& spec);

//! Geometric-series limit of cumulative_supply.
double supply_limit(const ChainSpec& spec);

//! Difficulty after one epoch that took `actual_epoch_duration_s`, with the
//! adjustment ratio clamped to [1/retarget_clamp, retarget_clamp].
double retarget_difficulty(double old_difficulty, double actual_epoch_duration_s,
                           const ChainSpec& spec);

//! Apply the entry/exit rule: inactive cohorts activate when their margin
//! exceeds +hysteresis, active cohorts deactivate below -hysteresis. When
//! `margins_out` is given it receives each cohort's margin in order.
std::vector<MinerCohort> participation_update(std::vector<MinerCohort> cohorts,
                                              double revenue_rate_usd_per_eh,
                                              double hysteresis,
                                              std::vector<double>* margins_out = nullptr);

//! The stable total hash rate for fixed prices and tariffs, assuming the
//! difficulty has settled so blocks arrive on target. Cohorts are scanned in
//! ascending breakeven order (ties by id); each activates if it would still
//! be profitable with its own capacity included. Returns 0 when no cohort is
//! profitable at all (the empty-network equilibrium).
double equilibrium_hash_rate(std::span<const MinerCohort> cohorts,
                             const estimators::MarketSample& sample, const ChainSpec& spec);

//! Run the deterministic epoch loop described in SimConfig.
SimTrace run_simulation(const SimConfig& config);

//! Reduce a trace to headline statistics.
TraceSummary summarize_trace(const SimTrace& trace);

//! Render a trace as CSV (one row per epoch, margins as trailing columns).
std::string render_trace_csv(const SimTrace& trace);

} // namespace chainwatt::minesim
