// Copyright (c) 2026 The chainwatt developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <chainwatt/minesim.hpp>

#include <chainwatt/csv.hpp>
#include <chainwatt/errors.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace chainwatt::minesim {

namespace {

constexpr double kSecondsPerDay = 86400.0;

//! Revenue rate (USD/EH) at which a cohort's margin is exactly zero.
double breakeven_revenue_rate(const MinerCohort& cohort)
{
    return cohort.tariff.usd_per_kwh * efficiency_of(cohort.hardware) * kHashesPerExahash /
           kJoulesPerKwh;
}

//! The market sample in force on `date`: the last sample on or before it,
//! clamped to the first sample for earlier dates.
const estimators::MarketSample& sample_on(const estimators::MarketSeries& series, Date date)
{
    const auto& s = series.samples;
    auto it = std::upper_bound(s.begin(), s.end(), date,
                               [](Date d, const estimators::MarketSample& m) { return d < m.date; });
    if (it == s.begin()) return s.front();
    return *(it - 1);
}

struct Decision {
    double revenue_per_eh = 0.0;
    double hash_rate_hs = 0.0;
    double power_w = 0.0;
    std::vector<double> margins;
};

//! Re-evaluate participation at the given difficulty/price state.
Decision decide(std::vector<MinerCohort>& cohorts, const SimConfig& config, Date date,
                double difficulty, double subsidy)
{
    const estimators::MarketSample& market = sample_on(config.price_path, date);
    estimators::MarketSample state;
    state.date = date;
    state.price_usd = market.price_usd;
    state.difficulty = difficulty;
    state.subsidy = subsidy;
    state.fees_per_block = market.fees();

    Decision d;
    d.revenue_per_eh = estimators::revenue_per_exahash(state, config.spec);
    cohorts = participation_update(std::move(cohorts), d.revenue_per_eh, config.hysteresis,
                                   &d.margins);
    for (const MinerCohort& c : cohorts) {
        if (!c.active) continue;
        d.hash_rate_hs += c.capacity_hs;
        d.power_w += c.capacity_hs * efficiency_of(c.hardware);
    }
    return d;
}

SimRecord make_record(std::int64_t epoch, double t, double duration, std::int64_t height,
                      double difficulty, double subsidy, const Decision& d,
                      const std::vector<MinerCohort>& cohorts, bool stalled)
{
    SimRecord r;
    r.epoch = epoch;
    r.sim_time_s = t;
    r.duration_s = duration;
    r.height = height;
    r.difficulty = difficulty;
    r.hash_rate_hs = d.hash_rate_hs;
    r.power_w = d.power_w;
    r.subsidy = subsidy;
    r.revenue_per_eh = d.revenue_per_eh;
    r.stalled = stalled;
    r.margins = d.margins;
    r.active.reserve(cohorts.size());
    for (const MinerCohort& c : cohorts) r.active.push_back(c.active ? 1 : 0);
    return r;
}

} // namespace

void MinerCohort::validate() const
{
    hardware.validate();
    if (!(tariff.usd_per_kwh > 0)) {
        throw validation_error("cohort '" + id + "': tariff must be > 0 (margins are undefined for free electricity)");
    }
    if (!(capacity_hs > 0)) throw validation_error("cohort '" + id + "': capacity must be > 0");
}

void SimConfig::validate() const
{
    spec.validate();
    if (cohorts.empty()) throw validation_error("sim config: at least one cohort required");
    for (const MinerCohort& c : cohorts) c.validate();
    price_path.validate();
    if (!(start_difficulty > 0)) throw validation_error("sim config: start_difficulty must be > 0");
    if (duration_epochs < 1) throw validation_error("sim config: duration_epochs must be >= 1");
    if (!(hysteresis >= 0)) throw validation_error("sim config: hysteresis must be >= 0");
}

double block_subsidy(std::int64_t height, const ChainSpec& spec)
{
    spec.validate();
    if (height < 0) throw validation_error("block_subsidy: height must be >= 0");
    const std::int64_t halvings = height / spec.halving_interval;
    // Beyond a few thousand halvings the subsidy has long underflowed to 0.
    const int shift = halvings > 4096 ? -4096 : -static_cast<int>(halvings);
    return std::ldexp(spec.initial_subsidy, shift);
}

double cumulative_supply(std::int64_t height, const ChainSpec& spec)
{
    spec.validate();
    if (height < 0) throw validation_error("cumulative_supply: height must be >= 0");
    const std::int64_t eras = height / spec.halving_interval;
    const std::int64_t rest = height % spec.halving_interval;
    const int shift = eras > 4096 ? -4096 : -static_cast<int>(eras);
    // Sum over k < eras of interval * B0 * 2^-k, plus the partial current era.
    const double full_eras = static_cast<double>(spec.halving_interval) * spec.initial_subsidy *
                             2.0 * (1.0 - std::ldexp(1.0, shift));
    return full_eras + static_cast<double>(rest) * std::ldexp(spec.initial_subsidy, shift);
}

double supply_limit(const ChainSpec& spec)
{
    spec.validate();
    return 2.0 * spec.initial_subsidy * static_cast<double>(spec.halving_interval);
}

double retarget_difficulty(double old_difficulty, double actual_epoch_duration_s,
                           const ChainSpec& spec)
{
    spec.validate();
    if (!(old_difficulty > 0)) throw validation_error("retarget_difficulty: difficulty must be > 0");
    if (!(actual_epoch_duration_s > 0)) throw validation_error("retarget_difficulty: duration must be > 0");
    const double target = static_cast<double>(spec.retarget_epoch) * spec.target_block_time_s;
    double ratio = target / actual_epoch_duration_s;
    ratio = std::min(spec.retarget_clamp, std::max(1.0 / spec.retarget_clamp, ratio));
    return old_difficulty * ratio;
}

std::vector<MinerCohort> participation_update(std::vector<MinerCohort> cohorts,
                                              double revenue_rate_usd_per_eh, double hysteresis,
                                              std::vector<double>* margins_out)
{
    if (!(hysteresis >= 0)) throw validation_error("participation_update: hysteresis must be >= 0");
    if (margins_out) {
        margins_out->clear();
        margins_out->reserve(cohorts.size());
    }
    for (MinerCohort& c : cohorts) {
        const double margin = estimators::relative_margin(c.hardware, c.tariff,
                                                          revenue_rate_usd_per_eh);
        if (!c.active && margin > hysteresis) c.active = true;
        else if (c.active && margin < -hysteresis) c.active = false;
        if (margins_out) margins_out->push_back(margin);
    }
    return cohorts;
}

double equilibrium_hash_rate(std::span<const MinerCohort> cohorts,
                             const estimators::MarketSample& sample, const ChainSpec& spec)
{
    if (cohorts.empty()) throw validation_error("equilibrium_hash_rate: no cohorts");
    for (const MinerCohort& c : cohorts) c.validate();
    sample.validate();
    spec.validate();

    // With the difficulty settled on target, a total hash rate R earns
    // (subsidy + fees) * price per T seconds network-wide, i.e. a revenue
    // rate r(R) = reward_usd / (R * T) per hash.
    const double reward_usd = (sample.subsidy + sample.fees()) * sample.price_usd;
    const auto revenue_rate_at = [&](double hash_rate) {
        return reward_usd / (hash_rate * spec.target_block_time_s) * kHashesPerExahash;
    };

    std::vector<std::size_t> order(cohorts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> breakeven(cohorts.size());
    for (std::size_t i = 0; i < cohorts.size(); ++i) breakeven[i] = breakeven_revenue_rate(cohorts[i]);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (breakeven[a] != breakeven[b]) return breakeven[a] < breakeven[b];
        if (cohorts[a].id != cohorts[b].id) return cohorts[a].id < cohorts[b].id;
        return a < b;
    });

    // Cheapest producers first: each joins if it would still break even with
    // its own capacity diluting the revenue rate.
    double total = 0.0;
    for (std::size_t idx : order) {
        const double with_me = total + cohorts[idx].capacity_hs;
        if (revenue_rate_at(with_me) >= breakeven[idx]) total = with_me;
    }
    return total;
}

SimTrace run_simulation(const SimConfig& config)
{
    config.validate();

    SimTrace trace;
    trace.cohort_ids.reserve(config.cohorts.size());
    for (const MinerCohort& c : config.cohorts) trace.cohort_ids.push_back(c.id);

    std::vector<MinerCohort> cohorts = config.cohorts;
    double difficulty = config.start_difficulty;
    double t = 0.0;
    std::int64_t height = 0;
    const double epoch_blocks = static_cast<double>(config.spec.retarget_epoch);
    const double epoch_target_s = epoch_blocks * config.spec.target_block_time_s;

    const auto date_at = [&](double time_s) {
        return config.start_date.plus_days(static_cast<std::int64_t>(std::floor(time_s / kSecondsPerDay)));
    };

    if (config.cadence == DecisionCadence::per_epoch) {
        for (std::int64_t epoch = 0; epoch < config.duration_epochs; ++epoch) {
            const double subsidy = block_subsidy(height, config.spec);
            const Decision d = decide(cohorts, config, date_at(t), difficulty, subsidy);
            if (d.hash_rate_hs <= 0.0) {
                trace.records.push_back(
                    make_record(epoch, t, 0.0, height, difficulty, subsidy, d, cohorts, true));
                trace.stalled = true;
                break;
            }
            const double hashes_per_block =
                estimators::expected_hashes_per_block(difficulty, config.spec);
            const double duration = epoch_blocks * hashes_per_block / d.hash_rate_hs;
            trace.records.push_back(
                make_record(epoch, t, duration, height, difficulty, subsidy, d, cohorts, false));
            t += duration;
            height += config.spec.retarget_epoch;
            difficulty = retarget_difficulty(difficulty, duration, config.spec);
        }
        return trace;
    }

    // per_day cadence: participation is re-evaluated at every simulated day
    // boundary; blocks accumulate fluidly between decisions. An epoch closes
    // when its block count is complete; the chain stalls if a full epoch's
    // target time passes with zero hash rate.
    std::int64_t epoch = 0;
    double epoch_start_t = 0.0;
    double blocks_done = 0.0;
    double stall_clock = 0.0;
    Decision last;
    while (epoch < config.duration_epochs) {
        const double subsidy = block_subsidy(height, config.spec);
        last = decide(cohorts, config, date_at(t), difficulty, subsidy);
        const double next_boundary = (std::floor(t / kSecondsPerDay) + 1.0) * kSecondsPerDay;
        if (last.hash_rate_hs <= 0.0) {
            const double dt = next_boundary - t;
            stall_clock += dt;
            if (stall_clock >= epoch_target_s) {
                trace.records.push_back(make_record(epoch, epoch_start_t, 0.0, height, difficulty,
                                                    subsidy, last, cohorts, true));
                trace.stalled = true;
                break;
            }
            t = next_boundary;
            continue;
        }
        stall_clock = 0.0;
        const double hashes_per_block =
            estimators::expected_hashes_per_block(difficulty, config.spec);
        const double to_epoch_end = (epoch_blocks - blocks_done) * hashes_per_block /
                                    last.hash_rate_hs;
        if (t + to_epoch_end <= next_boundary) {
            const double end_t = t + to_epoch_end;
            const double duration = end_t - epoch_start_t;
            trace.records.push_back(make_record(epoch, epoch_start_t, duration, height, difficulty,
                                                subsidy, last, cohorts, false));
            t = end_t;
            height += config.spec.retarget_epoch;
            difficulty = retarget_difficulty(difficulty, duration, config.spec);
            ++epoch;
            epoch_start_t = t;
            blocks_done = 0.0;
        } else {
            blocks_done += (next_boundary - t) * last.hash_rate_hs / hashes_per_block;
            t = next_boundary;
        }
    }
    return trace;
}

TraceSummary summarize_trace(const SimTrace& trace)
{
    if (trace.records.empty()) throw validation_error("summarize_trace: empty trace");
    TraceSummary s;
    s.min_power_w = trace.records.front().power_w;
    s.max_power_w = trace.records.front().power_w;
    double total_time = 0.0;
    double power_sum = 0.0;
    for (const SimRecord& r : trace.records) {
        s.min_power_w = std::min(s.min_power_w, r.power_w);
        s.max_power_w = std::max(s.max_power_w, r.power_w);
        s.total_energy_j += r.power_w * r.duration_s;
        total_time += r.duration_s;
        power_sum += r.power_w;
        s.per_epoch.push_back(EnergyEstimate::from_power(r.power_w, BoundKind::simulated));
    }
    // Time-weighted mean; a trace consisting only of a stalled record has no
    // elapsed time, so fall back to the plain average.
    s.mean_power_w = total_time > 0.0 ? s.total_energy_j / total_time
                                      : power_sum / static_cast<double>(trace.records.size());
    if (trace.records.size() >= 2) {
        std::vector<double> revenue;
        std::vector<double> hash;
        revenue.reserve(trace.records.size());
        hash.reserve(trace.records.size());
        for (const SimRecord& r : trace.records) {
            revenue.push_back(r.revenue_per_eh);
            hash.push_back(r.hash_rate_hs);
        }
        try {
            s.revenue_hash_correlation = estimators::pearson_correlation(revenue, hash);
        } catch (const validation_error&) {
            // zero variance: correlation undefined, reported as absent
        }
    }
    return s;
}

std::string render_trace_csv(const SimTrace& trace)
{
    std::string out = "epoch,sim_time_s,duration_s,height,difficulty,hash_rate_hs,power_w,subsidy,"
                      "revenue_per_eh,stalled";
    for (const std::string& id : trace.cohort_ids) {
        out += ",margin_" + id;
    }
    out += '\n';
    for (const SimRecord& r : trace.records) {
        out += csv::format_integer(r.epoch);
        out += ',';
        out += csv::format_decimal(r.sim_time_s);
        out += ',';
        out += csv::format_decimal(r.duration_s);
        out += ',';
        out += csv::format_integer(r.height);
        out += ',';
        out += csv::format_decimal(r.difficulty);
        out += ',';
        out += csv::format_decimal(r.hash_rate_hs);
        out += ',';
        out += csv::format_decimal(r.power_w);
        out += ',';
        out += csv::format_decimal(r.subsidy);
        out += ',';
        out += csv::format_decimal(r.revenue_per_eh);
        out += ',';
        out += r.stalled ? '1' : '0';
        for (double m : r.margins) {
            out += ',';
            out += csv::format_decimal(m);
        }
        out += '\n';
    }
    return out;
}

} // namespace chainwatt::minesim
