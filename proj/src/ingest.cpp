// Copyright (c) 2026 The chainwatt developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <chainwatt/ingest.hpp>

#include <chainwatt/csv.hpp>
#include <chainwatt/errors.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>

namespace chainwatt::ingest {

namespace {

void check_columns(const csv::Table& table, std::initializer_list<std::string_view> allowed)
{
    std::set<std::string_view> seen;
    for (const std::string& col : table.columns) {
        if (std::find(allowed.begin(), allowed.end(), col) == allowed.end()) {
            throw validation_error(table.origin + ": unknown column '" + col + "'");
        }
        if (!seen.insert(col).second) {
            throw validation_error(table.origin + ": duplicate column '" + col + "'");
        }
    }
}

Date parse_date_cell(const std::string& cell, const std::string& origin, std::size_t line)
{
    try {
        return Date::parse(cell);
    } catch (const validation_error& e) {
        throw validation_error(origin + ":" + std::to_string(line) + ": " + e.what());
    }
}

} // namespace

estimators::MarketSeries load_market_csv(const std::string& path)
{
    const csv::Table table = csv::read_file(path);
    check_columns(table, {"date", "price_usd", "difficulty", "subsidy", "fees_per_block",
                          "hash_rate_ehs"});
    const std::size_t date_col = table.column_index("date");
    const std::size_t price_col = table.column_index("price_usd");
    const std::size_t diff_col = table.column_index("difficulty");
    const std::size_t subsidy_col = table.column_index("subsidy");
    const std::size_t fees_col = table.optional_column_index("fees_per_block");
    const std::size_t hash_col = table.optional_column_index("hash_rate_ehs");

    estimators::MarketSeries series;
    series.has_fees_column = fees_col != csv::Table::npos;
    series.has_hash_rate_column = hash_col != csv::Table::npos;
    series.samples.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const std::size_t line = table.row_lines[i];
        estimators::MarketSample s;
        s.date = parse_date_cell(row[date_col], path, line);
        s.price_usd = csv::parse_decimal(row[price_col], path, line, "price_usd");
        s.difficulty = csv::parse_decimal(row[diff_col], path, line, "difficulty");
        s.subsidy = csv::parse_decimal(row[subsidy_col], path, line, "subsidy");
        if (fees_col != csv::Table::npos && !row[fees_col].empty()) {
            s.fees_per_block = csv::parse_decimal(row[fees_col], path, line, "fees_per_block");
        }
        if (hash_col != csv::Table::npos && !row[hash_col].empty()) {
            s.observed_hash_rate_hs =
                csv::parse_decimal(row[hash_col], path, line, "hash_rate_ehs") * kHashesPerExahash;
        }
        try {
            s.validate();
        } catch (const validation_error& e) {
            throw validation_error(path + ":" + std::to_string(line) + ": " + e.what());
        }
        if (!series.samples.empty()) {
            const Date prev = series.samples.back().date;
            if (s.date == prev) {
                throw validation_error(path + ":" + std::to_string(line) + ": duplicate date " +
                                       s.date.to_string());
            }
            if (s.date < prev) {
                throw validation_error(path + ":" + std::to_string(line) +
                                       ": dates must be ascending (" + s.date.to_string() +
                                       " after " + prev.to_string() + ")");
            }
        }
        series.samples.push_back(std::move(s));
    }
    series.validate();
    return series;
}

std::vector<HardwareProfile> load_hardware_csv(const std::string& path)
{
    const csv::Table table = csv::read_file(path);
    check_columns(table, {"name", "launch_year", "hash_rate_ths", "power_w"});
    const std::size_t name_col = table.column_index("name");
    const std::size_t year_col = table.column_index("launch_year");
    const std::size_t rate_col = table.column_index("hash_rate_ths");
    const std::size_t power_col = table.column_index("power_w");

    std::vector<HardwareProfile> catalog;
    catalog.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const std::size_t line = table.row_lines[i];
        HardwareProfile p;
        p.name = row[name_col];
        p.launch_year = static_cast<int>(csv::parse_integer(row[year_col], path, line, "launch_year"));
        p.hash_rate_hs = csv::parse_decimal(row[rate_col], path, line, "hash_rate_ths") * 1e12;
        p.power_w = csv::parse_decimal(row[power_col], path, line, "power_w");
        try {
            p.validate();
        } catch (const validation_error& e) {
            throw validation_error(path + ":" + std::to_string(line) + ": " + e.what());
        }
        for (const HardwareProfile& existing : catalog) {
            if (existing.name == p.name) {
                throw validation_error(path + ":" + std::to_string(line) +
                                       ": duplicate hardware name '" + p.name + "'");
            }
        }
        catalog.push_back(std::move(p));
    }
    return catalog;
}

std::vector<netenergy::NetworkProfile> load_networks_csv(const std::string& path)
{
    const csv::Table table = csv::read_file(path);
    check_columns(table, {"name", "node_count", "energy_per_tx_per_node_j", "idle_power_per_node_w",
                          "throughput_tps", "consensus_overhead_j"});
    const std::size_t name_col = table.column_index("name");
    const std::size_t nodes_col = table.column_index("node_count");
    const std::size_t energy_col = table.column_index("energy_per_tx_per_node_j");
    const std::size_t idle_col = table.column_index("idle_power_per_node_w");
    const std::size_t tput_col = table.column_index("throughput_tps");
    const std::size_t consensus_col = table.column_index("consensus_overhead_j");

    std::vector<netenergy::NetworkProfile> networks;
    networks.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const std::size_t line = table.row_lines[i];
        netenergy::NetworkProfile p;
        p.name = row[name_col];
        p.node_count = csv::parse_integer(row[nodes_col], path, line, "node_count");
        p.energy_per_tx_per_node_j =
            csv::parse_decimal(row[energy_col], path, line, "energy_per_tx_per_node_j");
        p.idle_power_per_node_w = csv::parse_decimal(row[idle_col], path, line, "idle_power_per_node_w");
        p.throughput_tps = csv::parse_decimal(row[tput_col], path, line, "throughput_tps");
        p.consensus_overhead_j =
            csv::parse_decimal(row[consensus_col], path, line, "consensus_overhead_j");
        try {
            p.validate();
        } catch (const validation_error& e) {
            throw validation_error(path + ":" + std::to_string(line) + ": " + e.what());
        }
        for (const netenergy::NetworkProfile& existing : networks) {
            if (existing.name == p.name) {
                throw validation_error(path + ":" + std::to_string(line) +
                                       ": duplicate network name '" + p.name + "'");
            }
        }
        networks.push_back(std::move(p));
    }
    return networks;
}

std::string render_market_csv(const estimators::MarketSeries& series)
{
    bool fees = series.has_fees_column;
    bool hash = series.has_hash_rate_column;
    for (const estimators::MarketSample& s : series.samples) {
        fees = fees || s.fees_per_block.has_value();
        hash = hash || s.observed_hash_rate_hs.has_value();
    }
    std::string out = "date,price_usd,difficulty,subsidy";
    if (fees) out += ",fees_per_block";
    if (hash) out += ",hash_rate_ehs";
    out += '\n';
    for (const estimators::MarketSample& s : series.samples) {
        out += s.date.to_string();
        out += ',';
        out += csv::format_decimal(s.price_usd);
        out += ',';
        out += csv::format_decimal(s.difficulty);
        out += ',';
        out += csv::format_decimal(s.subsidy);
        if (fees) {
            out += ',';
            if (s.fees_per_block) out += csv::format_decimal(*s.fees_per_block);
        }
        if (hash) {
            out += ',';
            if (s.observed_hash_rate_hs) {
                out += csv::format_decimal(*s.observed_hash_rate_hs / kHashesPerExahash);
            }
        }
        out += '\n';
    }
    return out;
}

std::string render_hardware_csv(std::span<const HardwareProfile> profiles)
{
    std::string out = "name,launch_year,hash_rate_ths,power_w\n";
    for (const HardwareProfile& p : profiles) {
        out += p.name;
        out += ',';
        out += csv::format_integer(p.launch_year);
        out += ',';
        out += csv::format_decimal(p.hash_rate_hs / 1e12);
        out += ',';
        out += csv::format_decimal(p.power_w);
        out += '\n';
    }
    return out;
}

std::string render_networks_csv(std::span<const netenergy::NetworkProfile> profiles)
{
    std::string out = "name,node_count,energy_per_tx_per_node_j,idle_power_per_node_w,"
                      "throughput_tps,consensus_overhead_j\n";
    for (const netenergy::NetworkProfile& p : profiles) {
        out += p.name;
        out += ',';
        out += csv::format_integer(p.node_count);
        out += ',';
        out += csv::format_decimal(p.energy_per_tx_per_node_j);
        out += ',';
        out += csv::format_decimal(p.idle_power_per_node_w);
        out += ',';
        out += csv::format_decimal(p.throughput_tps);
        out += ',';
        out += csv::format_decimal(p.consensus_overhead_j);
        out += '\n';
    }
    return out;
}

const HardwareProfile& find_hardware(std::span<const HardwareProfile> catalog,
                                     std::string_view name)
{
    for (const HardwareProfile& p : catalog) {
        if (p.name == name) return p;
    }
    std::string known;
    for (const HardwareProfile& p : catalog) {
        if (!known.empty()) known += ", ";
        known += p.name;
    }
    throw validation_error("unknown hardware '" + std::string(name) + "' (catalog has: " + known +
                           ")");
}

estimators::MarketSeries resample_daily(const estimators::MarketSeries& series,
                                        ResamplePolicy policy)
{
    series.validate();
    estimators::MarketSeries out;
    out.has_fees_column = series.has_fees_column;
    out.has_hash_rate_column = series.has_hash_rate_column;

    std::vector<Date> missing;
    std::size_t cursor = 0;
    const Date first = series.samples.front().date;
    const Date last = series.samples.back().date;
    for (Date d = first; d <= last; d = d.next_day()) {
        if (cursor + 1 < series.samples.size() && series.samples[cursor + 1].date == d) ++cursor;
        if (series.samples[cursor].date == d) {
            out.samples.push_back(series.samples[cursor]);
        } else if (policy == ResamplePolicy::forward_fill) {
            estimators::MarketSample filled = series.samples[cursor];
            filled.date = d;
            out.samples.push_back(std::move(filled));
        } else {
            missing.push_back(d);
        }
    }
    if (!missing.empty()) {
        std::string msg = "series has gaps under strict resampling: missing";
        const std::size_t shown = std::min<std::size_t>(missing.size(), 10);
        for (std::size_t i = 0; i < shown; ++i) {
            msg += (i == 0 ? " " : ", ") + missing[i].to_string();
        }
        if (missing.size() > shown) {
            msg += " and " + std::to_string(missing.size() - shown) + " more";
        }
        throw validation_error(msg);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Scenario files
// ---------------------------------------------------------------------------

namespace {

struct ScenarioEntry {
    std::string key;
    std::string value;
    std::size_t line = 0;
    bool used = false;
};

struct ScenarioFile {
    std::string path;
    std::vector<ScenarioEntry> entries;

    ScenarioEntry* find(std::string_view key)
    {
        for (ScenarioEntry& e : entries) {
            if (e.key == key) return &e;
        }
        return nullptr;
    }

    std::optional<std::string> take(std::string_view key)
    {
        if (ScenarioEntry* e = find(key)) {
            e->used = true;
            return e->value;
        }
        return std::nullopt;
    }

    [[noreturn]] void fail(const ScenarioEntry& e, const std::string& what) const
    {
        throw validation_error(path + ":" + std::to_string(e.line) + ": key '" + e.key + "': " +
                               what);
    }

    double take_decimal(std::string_view key, double fallback)
    {
        ScenarioEntry* e = find(key);
        if (!e) return fallback;
        e->used = true;
        return parse_decimal_entry(*e);
    }

    double parse_decimal_entry(const ScenarioEntry& e) const
    {
        double value = 0.0;
        const char* first = e.value.data();
        const char* last = e.value.data() + e.value.size();
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last || e.value.empty()) {
            fail(e, "invalid decimal '" + e.value + "'");
        }
        return value;
    }

    std::int64_t parse_integer_entry(const ScenarioEntry& e) const
    {
        std::int64_t value = 0;
        const char* first = e.value.data();
        const char* last = e.value.data() + e.value.size();
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last || e.value.empty()) {
            fail(e, "invalid integer '" + e.value + "'");
        }
        return value;
    }

    std::int64_t take_integer(std::string_view key, std::int64_t fallback)
    {
        ScenarioEntry* e = find(key);
        if (!e) return fallback;
        e->used = true;
        return parse_integer_entry(*e);
    }
};

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

ScenarioFile parse_scenario_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path + "' for reading");
    ScenarioFile file;
    file.path = path;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string_view stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string_view::npos) {
            throw validation_error(path + ":" + std::to_string(line_no) +
                                   ": expected 'key = value', got '" + std::string(stripped) + "'");
        }
        ScenarioEntry entry;
        entry.key = std::string(trim(stripped.substr(0, eq)));
        entry.value = std::string(trim(stripped.substr(eq + 1)));
        entry.line = line_no;
        if (entry.key.empty()) {
            throw validation_error(path + ":" + std::to_string(line_no) + ": empty key");
        }
        if (entry.value.empty()) {
            throw validation_error(path + ":" + std::to_string(line_no) + ": key '" + entry.key +
                                   "': empty value");
        }
        for (const ScenarioEntry& prev : file.entries) {
            if (prev.key == entry.key) {
                throw validation_error(path + ":" + std::to_string(line_no) + ": duplicate key '" +
                                       entry.key + "' (first set on line " +
                                       std::to_string(prev.line) + ")");
            }
        }
        file.entries.push_back(std::move(entry));
    }
    if (in.bad()) throw io_error("read failure on '" + path + "'");
    return file;
}

std::string resolve_relative(const std::string& scenario_path, const std::string& value)
{
    const std::filesystem::path base = std::filesystem::path(scenario_path).parent_path();
    return (base / value).string();
}

} // namespace

minesim::SimConfig load_scenario(const std::string& path)
{
    ScenarioFile file = parse_scenario_file(path);
    minesim::SimConfig config;

    // Chain constants: defaults are Bitcoin mainnet.
    config.spec = ChainSpec::bitcoin();
    if (auto v = file.take("chain.name")) config.spec.name = *v;
    config.spec.target_block_time_s =
        file.take_decimal("chain.target_block_time_s", config.spec.target_block_time_s);
    config.spec.retarget_epoch = file.take_integer("chain.retarget_epoch", config.spec.retarget_epoch);
    config.spec.halving_interval =
        file.take_integer("chain.halving_interval", config.spec.halving_interval);
    config.spec.initial_subsidy =
        file.take_decimal("chain.initial_subsidy", config.spec.initial_subsidy);
    config.spec.hashes_per_difficulty_unit =
        file.take_decimal("chain.hashes_per_difficulty_unit", config.spec.hashes_per_difficulty_unit);
    config.spec.retarget_clamp = file.take_decimal("chain.retarget_clamp", config.spec.retarget_clamp);

    // Simulation controls.
    {
        ScenarioEntry* e = file.find("sim.start_difficulty");
        if (!e) throw validation_error(path + ": missing required key 'sim.start_difficulty'");
        e->used = true;
        config.start_difficulty = file.parse_decimal_entry(*e);
    }
    {
        ScenarioEntry* e = file.find("sim.duration_epochs");
        if (!e) throw validation_error(path + ": missing required key 'sim.duration_epochs'");
        e->used = true;
        config.duration_epochs = file.parse_integer_entry(*e);
    }
    config.hysteresis = file.take_decimal("sim.hysteresis", 0.0);
    if (auto v = file.take("sim.decision_cadence")) {
        if (*v == "per_epoch") {
            config.cadence = minesim::DecisionCadence::per_epoch;
        } else if (*v == "per_day") {
            config.cadence = minesim::DecisionCadence::per_day;
        } else {
            file.fail(*file.find("sim.decision_cadence"),
                      "expected 'per_epoch' or 'per_day', got '" + *v + "'");
        }
    }
    if (auto v = file.take("sim.start_date")) {
        try {
            config.start_date = Date::parse(*v);
        } catch (const validation_error& e) {
            file.fail(*file.find("sim.start_date"), e.what());
        }
    }

    // Price path: a constant or a CSV, exactly one of the two.
    const auto constant_price = file.take("price.constant_usd");
    const auto price_csv = file.take("price.csv");
    if (constant_price && price_csv) {
        throw validation_error(path + ": give either 'price.constant_usd' or 'price.csv', not both");
    }
    if (!constant_price && !price_csv) {
        throw validation_error(path + ": missing price path ('price.constant_usd' or 'price.csv')");
    }

    // Fees: an absolute figure, or a revenue share converted at the starting
    // subsidy and then held constant in absolute terms.
    const ScenarioEntry* fees_entry = file.find("price.fees_per_block");
    const ScenarioEntry* share_entry = file.find("price.fee_share");
    if (fees_entry && share_entry) {
        throw validation_error(path + ": give either 'price.fees_per_block' or 'price.fee_share', not both");
    }
    std::optional<double> constant_fees;
    if (fees_entry) {
        constant_fees = file.take_decimal("price.fees_per_block", 0.0);
        if (!(*constant_fees >= 0)) {
            file.fail(*fees_entry, "fees must be >= 0");
        }
    } else if (share_entry) {
        const double share = file.take_decimal("price.fee_share", 0.0);
        try {
            constant_fees =
                estimators::fees_from_share(minesim::block_subsidy(0, config.spec), share);
        } catch (const validation_error& e) {
            file.fail(*share_entry, e.what());
        }
    }

    if (constant_price) {
        const ScenarioEntry* e = file.find("price.constant_usd");
        estimators::MarketSample s;
        s.date = config.start_date;
        s.price_usd = file.parse_decimal_entry(*e);
        s.difficulty = 1.0; // placeholder; the simulator tracks its own
        s.subsidy = config.spec.initial_subsidy;
        s.fees_per_block = constant_fees.value_or(0.0);
        config.price_path.samples.push_back(std::move(s));
    } else {
        config.price_path = load_market_csv(resolve_relative(path, *price_csv));
        if (constant_fees) {
            for (estimators::MarketSample& s : config.price_path.samples) {
                s.fees_per_block = *constant_fees;
            }
        }
    }

    // Cohorts, in first-appearance order, resolved against the catalog.
    const auto catalog_path = file.take("hardware.catalog");
    if (!catalog_path) {
        throw validation_error(path + ": missing required key 'hardware.catalog'");
    }
    const std::vector<HardwareProfile> catalog =
        load_hardware_csv(resolve_relative(path, *catalog_path));

    std::vector<std::string> cohort_order;
    for (const ScenarioEntry& e : file.entries) {
        if (!e.key.starts_with("cohort.")) continue;
        const std::size_t id_start = std::string_view("cohort.").size();
        const std::size_t id_end = e.key.find('.', id_start);
        if (id_end == std::string::npos || id_end == id_start) {
            file.fail(e, "expected 'cohort.<id>.<field>'");
        }
        const std::string id = e.key.substr(id_start, id_end - id_start);
        if (std::find(cohort_order.begin(), cohort_order.end(), id) == cohort_order.end()) {
            cohort_order.push_back(id);
        }
    }
    if (cohort_order.empty()) {
        throw validation_error(path + ": no cohorts defined (need at least one 'cohort.<id>.*' block)");
    }
    for (const std::string& id : cohort_order) {
        const std::string prefix = "cohort." + id + ".";
        minesim::MinerCohort cohort;
        cohort.id = id;

        ScenarioEntry* hw = file.find(prefix + "hardware");
        if (!hw) {
            throw validation_error(path + ": cohort '" + id + "': missing key '" + prefix +
                                   "hardware'");
        }
        hw->used = true;
        try {
            cohort.hardware = find_hardware(catalog, hw->value);
        } catch (const validation_error& e) {
            file.fail(*hw, e.what());
        }

        ScenarioEntry* tariff = file.find(prefix + "tariff_usd_kwh");
        if (!tariff) {
            throw validation_error(path + ": cohort '" + id + "': missing key '" + prefix +
                                   "tariff_usd_kwh'");
        }
        tariff->used = true;
        cohort.tariff.usd_per_kwh = file.parse_decimal_entry(*tariff);

        ScenarioEntry* capacity = file.find(prefix + "capacity_ehs");
        if (!capacity) {
            throw validation_error(path + ": cohort '" + id + "': missing key '" + prefix +
                                   "capacity_ehs'");
        }
        capacity->used = true;
        cohort.capacity_hs = file.parse_decimal_entry(*capacity) * kHashesPerExahash;

        if (ScenarioEntry* active = file.find(prefix + "active")) {
            active->used = true;
            if (active->value == "true" || active->value == "1") {
                cohort.active = true;
            } else if (active->value == "false" || active->value == "0") {
                cohort.active = false;
            } else {
                file.fail(*active, "expected 'true' or 'false', got '" + active->value + "'");
            }
        }

        try {
            cohort.validate();
        } catch (const validation_error& e) {
            throw validation_error(path + ": " + e.what());
        }
        config.cohorts.push_back(std::move(cohort));
    }

    // Anything left over is a key this format does not know.
    for (const ScenarioEntry& e : file.entries) {
        if (!e.used) file.fail(e, "unknown key");
    }

    config.validate();
    return config;
}

} // namespace chainwatt::ingest
