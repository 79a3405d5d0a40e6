// Copyright (c) 2026 The chainwatt developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

//! chainwatt: command-line toolkit for blockchain energy-consumption models.
//! Every subcommand writes machine-readable CSV to stdout and diagnostics to
//! stderr; exit codes are 0 (success), 1 (validation error), 2 (I/O error).

#include <chainwatt/batch.hpp>
#include <chainwatt/csv.hpp>
#include <chainwatt/date.hpp>
#include <chainwatt/errors.hpp>
#include <chainwatt/estimators.hpp>
#include <chainwatt/ingest.hpp>
#include <chainwatt/minesim.hpp>
#include <chainwatt/netenergy.hpp>
#include <chainwatt/units.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace cw = chainwatt;

namespace {

void write_stdout(const std::string& text)
{
    std::fwrite(text.data(), 1, text.size(), stdout);
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw cw::io_error("cannot open '" + path + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw cw::io_error("write failure on '" + path + "'");
}

struct DateRange {
    cw::Date from;
    cw::Date to;
};

DateRange parse_date_range(const std::string& text)
{
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos) {
        throw cw::validation_error("invalid --date-range '" + text +
                                   "': expected YYYY-MM-DD:YYYY-MM-DD");
    }
    DateRange range{cw::Date::parse(text.substr(0, colon)), cw::Date::parse(text.substr(colon + 1))};
    if (range.to < range.from) {
        throw cw::validation_error("invalid --date-range '" + text + "': end before start");
    }
    return range;
}

cw::estimators::MarketSeries filter_range(const cw::estimators::MarketSeries& series,
                                          const std::optional<DateRange>& range)
{
    if (!range) return series;
    cw::estimators::MarketSeries out;
    out.has_fees_column = series.has_fees_column;
    out.has_hash_rate_column = series.has_hash_rate_column;
    for (const cw::estimators::MarketSample& s : series.samples) {
        if (range->from <= s.date && s.date <= range->to) out.samples.push_back(s);
    }
    return out;
}

//! Resolve --efficiency: a catalog entry by name, or "best" for the most
//! efficient device shipped.
double resolve_efficiency(const std::vector<cw::HardwareProfile>& catalog,
                          const std::string& selector)
{
    if (catalog.empty()) throw cw::validation_error("hardware catalog is empty");
    if (selector == "best") {
        double best = cw::efficiency_of(catalog.front());
        for (const cw::HardwareProfile& p : catalog) {
            best = std::min(best, cw::efficiency_of(p));
        }
        return best;
    }
    return cw::efficiency_of(cw::ingest::find_hardware(catalog, selector));
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

struct BoundsOptions {
    std::string market_csv;
    std::string hardware_csv;
    std::vector<double> tariffs;
    std::string efficiency = "best";
    std::string date_range;
};

void run_bounds(const BoundsOptions& opt)
{
    const auto market = cw::ingest::load_market_csv(opt.market_csv);
    const auto catalog = cw::ingest::load_hardware_csv(opt.hardware_csv);
    const double efficiency = resolve_efficiency(catalog, opt.efficiency);
    const std::vector<double> tariff_values = opt.tariffs.empty() ? std::vector<double>{0.05}
                                                                  : opt.tariffs;
    std::vector<cw::Tariff> tariffs;
    tariffs.reserve(tariff_values.size());
    for (double t : tariff_values) tariffs.push_back(cw::Tariff{t});

    std::optional<DateRange> range;
    if (!opt.date_range.empty()) range = parse_date_range(opt.date_range);
    const auto selected = filter_range(market, range);

    std::string out = "date,lower_twh";
    for (const cw::Tariff& t : tariffs) {
        out += ",upper_twh_" + cw::csv::format_decimal(t.usd_per_kwh);
    }
    out += '\n';
    if (!selected.samples.empty()) {
        const auto rows = cw::batch::bounds_series(selected, cw::ChainSpec::bitcoin(), efficiency,
                                                   tariffs, cw::batch::exec::parallel);
        for (const cw::batch::BoundsRow& row : rows) {
            out += row.date.to_string();
            out += ',';
            out += cw::csv::format_decimal(row.lower_twh);
            for (double u : row.upper_twh) {
                out += ',';
                out += cw::csv::format_decimal(u);
            }
            out += '\n';
        }
    }
    write_stdout(out);
}

// ---------------------------------------------------------------------------
// margin
// ---------------------------------------------------------------------------

struct MarginOptions {
    std::string market_csv;
    std::string hardware_csv;
    double tariff = 0.05;
    std::vector<std::string> hardware;
};

void run_margin(const MarginOptions& opt)
{
    const auto market = cw::ingest::load_market_csv(opt.market_csv);
    const auto catalog = cw::ingest::load_hardware_csv(opt.hardware_csv);
    std::vector<cw::HardwareProfile> selected;
    if (opt.hardware.empty()) {
        selected = catalog;
    } else {
        for (const std::string& name : opt.hardware) {
            selected.push_back(cw::ingest::find_hardware(catalog, name));
        }
    }

    const auto rows = cw::batch::margin_series(market, cw::ChainSpec::bitcoin(), selected,
                                               cw::Tariff{opt.tariff}, cw::batch::exec::parallel);
    std::string out = "date";
    for (const cw::HardwareProfile& p : selected) out += ",margin_" + p.name;
    out += '\n';
    for (const cw::batch::MarginRow& row : rows) {
        out += row.date.to_string();
        for (double m : row.margins) {
            out += ',';
            out += cw::csv::format_decimal(m);
        }
        out += '\n';
    }
    write_stdout(out);
}

// ---------------------------------------------------------------------------
// project
// ---------------------------------------------------------------------------

struct ProjectOptions {
    double current_twh = 0.0;
    double fee_share = 0.0;
    std::int64_t halvings = 0;
};

void run_project(const ProjectOptions& opt)
{
    std::string out = "halvings,fraction,projected_twh\n";
    for (std::int64_t n = 0; n <= opt.halvings; ++n) {
        const double fraction = cw::estimators::halving_fraction(opt.fee_share, n);
        out += cw::csv::format_integer(n);
        out += ',';
        out += cw::csv::format_decimal(fraction);
        out += ',';
        out += cw::csv::format_decimal(opt.current_twh * fraction);
        out += '\n';
    }
    const double floor = cw::estimators::halving_floor(opt.fee_share);
    out += "floor,";
    out += cw::csv::format_decimal(floor);
    out += ',';
    out += cw::csv::format_decimal(opt.current_twh * floor);
    out += '\n';
    write_stdout(out);
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateOptions {
    std::vector<std::string> scenarios;
    std::string out_file;
    std::string out_dir;
};

std::string summarize_for_stderr(const std::string& scenario, const cw::minesim::SimTrace& trace,
                                 const cw::ChainSpec& spec)
{
    const cw::minesim::TraceSummary summary = cw::minesim::summarize_trace(trace);
    std::string text;
    text += "scenario: " + std::filesystem::path(scenario).stem().string() + "\n";
    text += "epochs: " + cw::csv::format_integer(static_cast<std::int64_t>(trace.records.size())) +
            "\n";
    text += std::string("stalled: ") + (trace.stalled ? "yes" : "no") + "\n";
    text += "mean_power_w: " + cw::csv::format_decimal(summary.mean_power_w) + "\n";
    text += "min_power_w: " + cw::csv::format_decimal(summary.min_power_w) + "\n";
    text += "max_power_w: " + cw::csv::format_decimal(summary.max_power_w) + "\n";
    text += "total_energy_twh: " +
            cw::csv::format_decimal(summary.total_energy_j / 3.6e15) + "\n";
    if (summary.revenue_hash_correlation) {
        text += "revenue_hash_correlation: " +
                cw::csv::format_decimal(*summary.revenue_hash_correlation) + "\n";
    } else {
        text += "revenue_hash_correlation: n/a\n";
    }
    if (!trace.stalled && !trace.records.empty()) {
        const cw::minesim::SimRecord& last = trace.records.back();
        text += "final_block_time_s: " +
                cw::csv::format_decimal(last.duration_s /
                                        static_cast<double>(spec.retarget_epoch)) +
                "\n";
    }
    return text;
}

std::string trace_output_path(const std::string& out_dir, const std::string& scenario)
{
    const std::filesystem::path stem = std::filesystem::path(scenario).stem();
    return (std::filesystem::path(out_dir) / (stem.string() + ".trace.csv")).string();
}

void run_simulate(const SimulateOptions& opt)
{
    if (!opt.out_file.empty() && !opt.out_dir.empty()) {
        throw cw::validation_error("give either --out or --out-dir, not both");
    }
    if (opt.scenarios.size() > 1 && opt.out_dir.empty()) {
        throw cw::validation_error("multiple scenarios need --out-dir for their traces");
    }
    if (!opt.out_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(opt.out_dir, ec);
        if (ec) throw cw::io_error("cannot create directory '" + opt.out_dir + "': " + ec.message());
    }

    struct Job {
        std::string scenario;
        std::string summary;
        std::string error;
        int error_code = 0;
    };
    std::vector<Job> jobs(opt.scenarios.size());
    for (std::size_t i = 0; i < opt.scenarios.size(); ++i) jobs[i].scenario = opt.scenarios[i];

    // Scenario runs are independent; with several inputs they execute in
    // parallel and each trace lands in its own file.
    const bool parallel = jobs.size() > 1;
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(jobs.size()); ++i) {
        Job& job = jobs[i];
        try {
            const cw::minesim::SimConfig config = cw::ingest::load_scenario(job.scenario);
            const cw::minesim::SimTrace trace = cw::minesim::run_simulation(config);
            const std::string csv = cw::minesim::render_trace_csv(trace);
            job.summary = summarize_for_stderr(job.scenario, trace, config.spec);
            if (!opt.out_dir.empty()) {
                write_file(trace_output_path(opt.out_dir, job.scenario), csv);
            } else if (!opt.out_file.empty()) {
                write_file(opt.out_file, csv);
            } else {
                write_stdout(csv);
            }
        } catch (const cw::io_error& e) {
            job.error = e.what();
            job.error_code = 2;
        } catch (const cw::validation_error& e) {
            job.error = e.what();
            job.error_code = 1;
        }
    }

    int worst = 0;
    for (const Job& job : jobs) {
        if (job.error_code != 0) {
            std::cerr << "error: " << job.error << '\n';
            worst = worst == 0 ? job.error_code : worst;
        } else {
            std::cerr << job.summary;
        }
    }
    if (worst == 1) throw cw::validation_error("simulation failed; see messages above");
    if (worst == 2) throw cw::io_error("simulation failed; see messages above");
}

// ---------------------------------------------------------------------------
// rollup
// ---------------------------------------------------------------------------

struct RollupOptions {
    std::int64_t nodes = 10000;
    double per_node_j = 0.01;
    double gas_simple = 36500.0;
    double gas_rollup = 365.0;
    double prover_w = 1050.0;
    double tps = 2100.0;
    std::optional<double> idle_w;
};

void run_rollup(const RollupOptions& opt)
{
    cw::netenergy::NetworkProfile network;
    network.name = "rollup-network";
    network.node_count = opt.nodes;
    network.energy_per_tx_per_node_j = opt.per_node_j;
    network.idle_power_per_node_w = opt.idle_w.value_or(0.0);
    network.throughput_tps = opt.tps;

    cw::netenergy::RollupParams params;
    params.gas_simple_tx = opt.gas_simple;
    params.gas_rollup_tx = opt.gas_rollup;
    params.prover_power_w = opt.prover_w;
    params.rollup_throughput_tps = opt.tps;

    const double before = cw::netenergy::redundant_energy_per_tx(network);
    const double factor = cw::netenergy::gas_reduction_factor(params);
    const double prover = cw::netenergy::prover_energy_per_tx(params);
    const double after = cw::netenergy::rollup_energy_per_tx(before, factor, prover);
    const double saving = cw::netenergy::savings_fraction(before, after);

    std::string out = "before_j_per_tx,gas_factor,prover_j_per_tx,after_j_per_tx,savings_fraction";
    if (opt.idle_w) out += ",after_idle_adjusted_j_per_tx";
    out += '\n';
    out += cw::csv::format_decimal(before);
    out += ',';
    out += cw::csv::format_decimal(factor);
    out += ',';
    out += cw::csv::format_decimal(prover);
    out += ',';
    out += cw::csv::format_decimal(after);
    out += ',';
    out += cw::csv::format_decimal(saving);
    if (opt.idle_w) {
        out += ',';
        out += cw::csv::format_decimal(cw::netenergy::idle_adjusted_energy_per_tx(after, network));
    }
    out += '\n';
    write_stdout(out);
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

void run_compare(const std::string& networks_csv)
{
    const auto networks = cw::ingest::load_networks_csv(networks_csv);
    const cw::netenergy::ArchitectureReport report = cw::netenergy::compare_architectures(networks);
    std::string out = "name,energy_per_tx_j,order_of_magnitude\n";
    for (const cw::netenergy::ArchitectureRow& row : report.rows) {
        out += row.name;
        out += ',';
        out += cw::csv::format_decimal(row.energy_per_tx_j);
        out += ',';
        out += cw::csv::format_integer(row.order_of_magnitude);
        out += '\n';
    }
    write_stdout(out);
}

// ---------------------------------------------------------------------------
// correlate
// ---------------------------------------------------------------------------

struct CorrelateOptions {
    std::string market_csv;
    std::string x = "revenue_per_eh";
    std::string y = "hash_rate";
    std::string date_range;
};

std::vector<double> extract_series(const cw::estimators::MarketSeries& series,
                                   const std::string& selector, const std::string& path)
{
    const cw::ChainSpec spec = cw::ChainSpec::bitcoin();
    if (selector == "revenue_per_eh") {
        return cw::batch::revenue_series(series, spec, cw::batch::exec::parallel);
    }
    std::vector<double> values;
    values.reserve(series.samples.size());
    for (const cw::estimators::MarketSample& s : series.samples) {
        if (selector == "price") {
            values.push_back(s.price_usd);
        } else if (selector == "difficulty") {
            values.push_back(s.difficulty);
        } else if (selector == "subsidy") {
            values.push_back(s.subsidy);
        } else if (selector == "fees") {
            values.push_back(s.fees());
        } else if (selector == "hash_rate") {
            if (!s.observed_hash_rate_hs) {
                throw cw::validation_error(path + ": sample " + s.date.to_string() +
                                           " has no hash_rate_ehs value, required for selector "
                                           "'hash_rate'");
            }
            values.push_back(*s.observed_hash_rate_hs);
        } else {
            throw cw::validation_error(
                "unknown series selector '" + selector +
                "' (valid: price, difficulty, subsidy, fees, revenue_per_eh, hash_rate)");
        }
    }
    return values;
}

void run_correlate(const CorrelateOptions& opt)
{
    const auto market = cw::ingest::load_market_csv(opt.market_csv);
    std::optional<DateRange> range;
    if (!opt.date_range.empty()) range = parse_date_range(opt.date_range);
    const auto selected = filter_range(market, range);
    if (selected.samples.size() < 2) {
        throw cw::validation_error("correlate: need at least 2 samples in the selected range");
    }
    // Align on calendar days before correlating.
    const auto daily = cw::ingest::resample_daily(selected, cw::ingest::ResamplePolicy::forward_fill);
    const std::vector<double> xs = extract_series(daily, opt.x, opt.market_csv);
    const std::vector<double> ys = extract_series(daily, opt.y, opt.market_csv);
    const double r = cw::batch::pearson_chunked(xs, ys, cw::batch::exec::parallel);

    std::string out = "x,y,n,pearson_r\n";
    out += opt.x + ',' + opt.y + ',' +
           cw::csv::format_integer(static_cast<std::int64_t>(daily.samples.size())) + ',' +
           cw::csv::format_decimal(r) + '\n';
    write_stdout(out);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"chainwatt: quantitative models of blockchain energy consumption"};
    app.require_subcommand(1);

    BoundsOptions bounds;
    CLI::App* bounds_cmd = app.add_subcommand(
        "bounds", "Per-date lower/upper electricity consumption bounds (TWh/yr)");
    bounds_cmd->add_option("market", bounds.market_csv, "market CSV file")->required();
    bounds_cmd->add_option("catalog", bounds.hardware_csv, "hardware catalog CSV")->required();
    bounds_cmd->add_option("--tariff", bounds.tariffs,
                           "electricity price USD/kWh for the upper bound (repeatable; default 0.05)");
    bounds_cmd->add_option("--efficiency", bounds.efficiency,
                           "device name from the catalog, or 'best' (default)");
    bounds_cmd->add_option("--date-range", bounds.date_range, "inclusive YYYY-MM-DD:YYYY-MM-DD");
    bounds_cmd->callback([&] { run_bounds(bounds); });

    MarginOptions margin;
    CLI::App* margin_cmd =
        app.add_subcommand("margin", "Per-date relative mining margins per device");
    margin_cmd->add_option("market", margin.market_csv, "market CSV file")->required();
    margin_cmd->add_option("catalog", margin.hardware_csv, "hardware catalog CSV")->required();
    margin_cmd->add_option("--tariff", margin.tariff, "electricity price USD/kWh (default 0.05)");
    margin_cmd->add_option("--hardware", margin.hardware,
                           "device names to include (default: whole catalog)");
    margin_cmd->callback([&] { run_margin(margin); });

    ProjectOptions project;
    CLI::App* project_cmd =
        app.add_subcommand("project", "Consumption projected through future subsidy halvings");
    project_cmd->add_option("--current-twh", project.current_twh, "current consumption TWh/yr")
        ->required();
    project_cmd->add_option("--fee-share", project.fee_share, "fee share of mining revenue [0,1]")
        ->required();
    project_cmd->add_option("--halvings", project.halvings, "number of halvings to project")
        ->required();
    project_cmd->callback([&] { run_project(project); });

    SimulateOptions simulate;
    CLI::App* simulate_cmd =
        app.add_subcommand("simulate", "Run miner-market scenario files and emit epoch traces");
    simulate_cmd->add_option("scenario", simulate.scenarios, "scenario file(s)")
        ->required()
        ->expected(-1);
    simulate_cmd->add_option("--out", simulate.out_file, "trace output file (single scenario)");
    simulate_cmd->add_option("--out-dir", simulate.out_dir,
                             "directory for per-scenario trace files");
    simulate_cmd->callback([&] { run_simulate(simulate); });

    RollupOptions rollup;
    CLI::App* rollup_cmd =
        app.add_subcommand("rollup", "zk-rollup per-transaction energy model");
    rollup_cmd->add_option("--nodes", rollup.nodes, "network node count (default 10000)");
    rollup_cmd->add_option("--per-node-j", rollup.per_node_j,
                           "energy per transaction per node, J (default 0.01)");
    rollup_cmd->add_option("--gas-simple", rollup.gas_simple,
                           "gas of a simple transaction (default 36500)");
    rollup_cmd->add_option("--gas-rollup", rollup.gas_rollup,
                           "gas of a rolled-up transaction (default 365)");
    rollup_cmd->add_option("--prover-w", rollup.prover_w, "prover power draw, W (default 1050)");
    rollup_cmd->add_option("--tps", rollup.tps, "rollup throughput, tx/s (default 2100)");
    double idle_w = 0.0;
    CLI::Option* idle_opt =
        rollup_cmd->add_option("--idle-w", idle_w, "per-node idle power, W (adds adjusted column)");
    rollup_cmd->callback([&] {
        if (*idle_opt) rollup.idle_w = idle_w;
        run_rollup(rollup);
    });

    std::string networks_csv;
    CLI::App* compare_cmd = app.add_subcommand(
        "compare", "Architecture comparison table sorted by energy per transaction");
    compare_cmd->add_option("networks", networks_csv, "network catalog CSV")->required();
    compare_cmd->callback([&] { run_compare(networks_csv); });

    CorrelateOptions correlate;
    CLI::App* correlate_cmd = app.add_subcommand(
        "correlate", "Pearson correlation between two daily-aligned market series");
    correlate_cmd->add_option("market", correlate.market_csv, "market CSV file")->required();
    correlate_cmd->add_option("--x", correlate.x,
                              "series selector (price, difficulty, subsidy, fees, revenue_per_eh, "
                              "hash_rate)");
    correlate_cmd->add_option("--y", correlate.y, "series selector, as --x");
    correlate_cmd->add_option("--date-range", correlate.date_range,
                              "inclusive YYYY-MM-DD:YYYY-MM-DD");
    correlate_cmd->callback([&] { run_correlate(correlate); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const cw::validation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const cw::io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
