// Copyright (c) 2026 The chainwatt developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <chainwatt/estimators.hpp>
#include <chainwatt/units.hpp>

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void spit(const fs::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    out << content;
}

//! Run the CLI with `args`, capturing exit code, stdout and stderr.
RunResult run_cli(const std::string& args)
{
    static int counter = 0;
    const fs::path dir = fs::temp_directory_path();
    const std::string tag = std::to_string(::getpid()) + "_" + std::to_string(counter++);
    const fs::path out_path = dir / ("chainwatt_out_" + tag);
    const fs::path err_path = dir / ("chainwatt_err_" + tag);

    const std::string cmd = std::string("\"") + CHAINWATT_CLI_PATH + "\" " + args + " > \"" +
                            out_path.string() + "\" 2> \"" + err_path.string() + "\"";
    const int status = std::system(cmd.c_str());

    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    fs::remove(out_path);
    fs::remove(err_path);
    return r;
}

std::vector<std::string> lines_of(const std::string& text)
{
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> cells_of(const std::string& line)
{
    std::vector<std::string> cells;
    std::istringstream in(line);
    std::string cell;
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    return cells;
}

double as_double(const std::string& cell) { return std::strtod(cell.c_str(), nullptr); }

//! Scratch directory removed when the test ends.
struct TempDir {
    fs::path path;
    TempDir()
    {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("chainwatt_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

const std::string kDataDir = CHAINWATT_DATA_DIR;
const std::string kGoldenDir = CHAINWATT_GOLDEN_DIR;

//! One-row market: balanced difficulty, 9100 USD, 12.5 coins, no fees.
const char* kTinyMarket = "date,price_usd,difficulty,subsidy\n"
                          "2020-05-01,9100,13969838619232.178,12.5\n";

} // namespace

TEST_CASE("cli: help and error exit codes")
{
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("bounds --help").code == 0);
    CHECK(run_cli("simulate --help").code == 0);

    CHECK(run_cli("").code == 1);                   // a subcommand is required
    CHECK(run_cli("definitely-not-a-command").code == 1);
    CHECK(run_cli("bounds").code == 1);             // missing positionals

    const RunResult missing = run_cli("bounds /does/not/exist.csv " + kDataDir + "/hardware.csv");
    CHECK(missing.code == 2); // I/O failure
    CHECK(missing.err.find("error:") != std::string::npos);

    const RunResult bad_value =
        run_cli("project --current-twh oops --fee-share 0.2 --halvings 3");
    CHECK(bad_value.code == 1);
}

TEST_CASE("cli bounds: header, values, range filtering")
{
    TempDir tmp;
    spit(tmp.path / "market.csv", kTinyMarket);
    const std::string market = (tmp.path / "market.csv").string();
    const std::string hardware = kDataDir + "/hardware.csv";

    const RunResult r = run_cli("bounds " + market + " " + hardware +
                                " --efficiency WhatsminerM10S --tariff 0.05 --tariff 0.1");
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "date,lower_twh,upper_twh_0.05,upper_twh_0.1");
    const auto cells = cells_of(lines[1]);
    REQUIRE(cells.size() == 4);
    CHECK(cells[0] == "2020-05-01");
    // 100 EH/s at the M10S efficiency; upper bound at 9100 USD and 12.5 BTC.
    CHECK(as_double(cells[1]) == doctest::Approx(55.78363636363636).epsilon(1e-12));
    CHECK(as_double(cells[2]) == doctest::Approx(119.6559).epsilon(1e-12));
    CHECK(as_double(cells[3]) == doctest::Approx(59.82795).epsilon(1e-12));

    // Default tariff and efficiency: best device in the catalog (the S19).
    const RunResult d = run_cli("bounds " + market + " " + hardware);
    REQUIRE(d.code == 0);
    const auto dlines = lines_of(d.out);
    REQUIRE(dlines.size() == 2);
    CHECK(dlines[0] == "date,lower_twh,upper_twh_0.05");
    CHECK(as_double(cells_of(dlines[1])[1]) == doctest::Approx(25.899545454545454).epsilon(1e-9));

    // A range that excludes every sample leaves just the header.
    const RunResult empty = run_cli("bounds " + market + " " + hardware +
                                    " --date-range 1999-01-01:1999-12-31");
    REQUIRE(empty.code == 0);
    CHECK(lines_of(empty.out).size() == 1);

    // Unknown device name: validation failure, not I/O.
    const RunResult unknown = run_cli("bounds " + market + " " + hardware + " --efficiency Foo9000");
    CHECK(unknown.code == 1);
    CHECK(unknown.err.find("Foo9000") != std::string::npos);

    // Backwards range is rejected.
    CHECK(run_cli("bounds " + market + " " + hardware + " --date-range 2021-01-01:2020-01-01").code ==
          1);
}

TEST_CASE("cli margin: one column per device, values match the library")
{
    TempDir tmp;
    spit(tmp.path / "market.csv", kTinyMarket);
    const std::string market = (tmp.path / "market.csv").string();
    const std::string hardware = kDataDir + "/hardware.csv";

    const RunResult r = run_cli("margin " + market + " " + hardware + " --tariff 0.05");
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "date,margin_AntminerS9,margin_WhatsminerM10S,margin_AntminerS19Pro");

    // Cross-check against the in-process estimators.
    chainwatt::estimators::MarketSample sample;
    sample.date = chainwatt::Date(2020, 5, 1);
    sample.price_usd = 9100.0;
    sample.difficulty = 13969838619232.178;
    sample.subsidy = 12.5;
    const chainwatt::ChainSpec spec = chainwatt::ChainSpec::bitcoin();
    const double rate = chainwatt::estimators::revenue_per_exahash(sample, spec);
    const chainwatt::HardwareProfile s9{"AntminerS9", 2016, 11.5e12, 1375.0};
    const chainwatt::HardwareProfile s19{"AntminerS19Pro", 2020, 110e12, 3250.0};
    const auto cells = cells_of(lines[1]);
    REQUIRE(cells.size() == 4);
    CHECK(as_double(cells[1]) ==
          doctest::Approx(chainwatt::estimators::relative_margin(s9, {0.05}, rate)).epsilon(1e-12));
    CHECK(as_double(cells[3]) ==
          doctest::Approx(chainwatt::estimators::relative_margin(s19, {0.05}, rate)).epsilon(1e-12));

    // Restricting --hardware selects and orders the columns.
    const RunResult one = run_cli("margin " + market + " " + hardware +
                                  " --hardware AntminerS19Pro --hardware AntminerS9");
    REQUIRE(one.code == 0);
    CHECK(lines_of(one.out)[0] == "date,margin_AntminerS19Pro,margin_AntminerS9");
}

TEST_CASE("cli project: halving table plus the fee floor")
{
    const RunResult r = run_cli("project --current-twh 100 --fee-share 0.2 --halvings 3");
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 6); // header, n = 0..3, floor
    CHECK(lines[0] == "halvings,fraction,projected_twh");
    CHECK(cells_of(lines[1])[0] == "0");
    CHECK(as_double(cells_of(lines[1])[1]) == 1.0);
    CHECK(as_double(cells_of(lines[1])[2]) == 100.0);
    CHECK(as_double(cells_of(lines[2])[1]) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(as_double(cells_of(lines[3])[1]) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(as_double(cells_of(lines[4])[1]) == doctest::Approx(0.3).epsilon(1e-12));
    const auto floor_cells = cells_of(lines[5]);
    CHECK(floor_cells[0] == "floor");
    CHECK(as_double(floor_cells[1]) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(as_double(floor_cells[2]) == doctest::Approx(20.0).epsilon(1e-12));

    CHECK(run_cli("project --current-twh 100 --fee-share 1.5 --halvings 3").code == 1);
    CHECK(run_cli("project --fee-share 0.2 --halvings 3").code == 1); // missing required
}

TEST_CASE("cli rollup: defaults reproduce the reference figures")
{
    const RunResult r = run_cli("rollup");
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "before_j_per_tx,gas_factor,prover_j_per_tx,after_j_per_tx,savings_fraction");
    CHECK(lines[1] == "100,100,0.5,1.5,0.985");

    const RunResult idle = run_cli("rollup --idle-w 2");
    REQUIRE(idle.code == 0);
    const auto ilines = lines_of(idle.out);
    REQUIRE(ilines.size() == 2);
    CHECK(ilines[0] ==
          "before_j_per_tx,gas_factor,prover_j_per_tx,after_j_per_tx,savings_fraction,"
          "after_idle_adjusted_j_per_tx");
    CHECK(cells_of(ilines[1]).back() == "11.023809523809524");

    CHECK(run_cli("rollup --gas-simple 10 --gas-rollup 100").code == 1); // factor < 1
}

TEST_CASE("cli compare: descending energy per transaction")
{
    const RunResult r = run_cli("compare " + kDataDir + "/networks.csv");
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] == "name,energy_per_tx_j,order_of_magnitude");
    CHECK(cells_of(lines[1])[0] == "pow_bitcoin");
    CHECK(cells_of(lines[1])[2] == "9");
    CHECK(cells_of(lines[2])[0] == "nonpow_large");
    CHECK(cells_of(lines[5])[0] == "central_kv");
    CHECK(cells_of(lines[5])[2] == "-2");
    double prev = as_double(cells_of(lines[1])[1]);
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const double e = as_double(cells_of(lines[i])[1]);
        CHECK(e <= prev);
        prev = e;
    }
}

TEST_CASE("cli correlate: self-correlation is 1, degenerate input is an error")
{
    const std::string market = kDataDir + "/bitcoin_market.csv";
    const RunResult self = run_cli("correlate " + market + " --x price --y price");
    REQUIRE(self.code == 0);
    const auto lines = lines_of(self.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "x,y,n,pearson_r");
    const auto cells = cells_of(lines[1]);
    REQUIRE(cells.size() == 4);
    CHECK(cells[0] == "price");
    CHECK(cells[1] == "price");
    CHECK(as_double(cells[3]) == doctest::Approx(1.0).epsilon(1e-12));

    const RunResult deflt = run_cli("correlate " + market);
    REQUIRE(deflt.code == 0);
    const auto dcells = cells_of(lines_of(deflt.out)[1]);
    CHECK(dcells[0] == "revenue_per_eh");
    CHECK(dcells[1] == "hash_rate");
    const double r = as_double(dcells[3]);
    CHECK(r > 0.3);
    CHECK(r < 0.8);

    CHECK(run_cli("correlate " + market + " --x nonsense").code == 1);

    TempDir tmp;
    spit(tmp.path / "flat.csv", "date,price_usd,difficulty,subsidy\n"
                                "2020-01-01,9000,1e13,12.5\n"
                                "2020-01-02,9000,1e13,12.5\n");
    CHECK(run_cli("correlate " + (tmp.path / "flat.csv").string() + " --x price --y price").code ==
          1); // zero variance

    spit(tmp.path / "one.csv", "date,price_usd,difficulty,subsidy\n"
                               "2020-01-01,9000,1e13,12.5\n");
    CHECK(run_cli("correlate " + (tmp.path / "one.csv").string()).code == 1); // < 2 samples
}

TEST_CASE("cli simulate: single scenario, summary, determinism, golden traces")
{
    TempDir tmp;
    const std::string scenario = kDataDir + "/scenarios/halving.scn";

    // Trace to stdout, summary to stderr.
    const RunResult r = run_cli("simulate " + scenario);
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() >= 2);
    CHECK(lines[0].rfind("epoch,sim_time_s,duration_s,height,", 0) == 0);
    CHECK(r.err.find("scenario: halving") != std::string::npos);
    CHECK(r.err.find("stalled: no") != std::string::npos);
    CHECK(r.err.find("final_block_time_s: 600") != std::string::npos);

    // --out writes the same bytes to a file instead.
    const fs::path out1 = tmp.path / "a.csv";
    const fs::path out2 = tmp.path / "b.csv";
    REQUIRE(run_cli("simulate " + scenario + " --out " + out1.string()).code == 0);
    REQUIRE(run_cli("simulate " + scenario + " --out " + out2.string()).code == 0);
    const std::string trace1 = slurp(out1);
    CHECK(trace1 == r.out);
    CHECK(trace1 == slurp(out2)); // byte-identical across runs

    // And matches the checked-in golden trace byte for byte.
    CHECK(trace1 == slurp(kGoldenDir + "/halving.trace.csv"));
}

TEST_CASE("cli simulate: multiple scenarios need --out-dir")
{
    TempDir tmp;
    const std::string halving = kDataDir + "/scenarios/halving.scn";
    const std::string flat = kDataDir + "/scenarios/flat.scn";
    const std::string shock = kDataDir + "/scenarios/price_shock.scn";

    CHECK(run_cli("simulate " + halving + " " + flat).code == 1); // no --out-dir

    const fs::path out_dir = tmp.path / "traces";
    const RunResult r =
        run_cli("simulate " + halving + " " + flat + " " + shock + " --out-dir " + out_dir.string());
    REQUIRE(r.code == 0);
    CHECK(slurp(out_dir / "halving.trace.csv") == slurp(kGoldenDir + "/halving.trace.csv"));
    CHECK(slurp(out_dir / "flat.trace.csv") == slurp(kGoldenDir + "/flat.trace.csv"));
    CHECK(slurp(out_dir / "price_shock.trace.csv") == slurp(kGoldenDir + "/price_shock.trace.csv"));

    // Summaries come out in input order regardless of scheduling.
    const auto pos_h = r.err.find("scenario: halving");
    const auto pos_f = r.err.find("scenario: flat");
    const auto pos_s = r.err.find("scenario: price_shock");
    REQUIRE(pos_h != std::string::npos);
    REQUIRE(pos_f != std::string::npos);
    REQUIRE(pos_s != std::string::npos);
    CHECK(pos_h < pos_f);
    CHECK(pos_f < pos_s);

    // A broken scenario among good ones fails the run but reports cleanly.
    TempDir bad;
    spit(bad.path / "broken.scn", "nonsense\n");
    const RunResult mixed = run_cli("simulate " + halving + " " + (bad.path / "broken.scn").string() +
                                    " --out-dir " + out_dir.string());
    CHECK(mixed.code == 1);
    CHECK(mixed.err.find("broken") != std::string::npos);
}

TEST_CASE("cli simulate: stalled scenario is reported as such")
{
    TempDir tmp;
    // A lone expensive cohort facing a hopeless price: stalls immediately.
    std::string scn;
    scn += "chain.initial_subsidy = 12.5\n";
    scn += "sim.start_difficulty = 13969838619232.178\n";
    scn += "sim.duration_epochs = 4\n";
    scn += "sim.start_date = 2020-01-01\n";
    scn += "price.constant_usd = 1\n";
    scn += "hardware.catalog = " + kDataDir + "/hardware.csv\n";
    scn += "cohort.a.hardware = AntminerS9\n";
    scn += "cohort.a.tariff_usd_kwh = 0.05\n";
    scn += "cohort.a.capacity_ehs = 10\n";
    scn += "cohort.a.active = false\n";
    spit(tmp.path / "stall.scn", scn);

    const RunResult r = run_cli("simulate " + (tmp.path / "stall.scn").string());
    REQUIRE(r.code == 0); // a stall is a result, not an error
    CHECK(r.err.find("stalled: yes") != std::string::npos);
    CHECK(r.err.find("final_block_time_s") == std::string::npos);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    const auto cells = cells_of(lines[1]);
    CHECK(cells[9] == "1"); // the stalled flag column
}
