// Copyright (c) 2026 The chainwatt developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <chainwatt/netenergy.hpp>

#include <chainwatt/errors.hpp>

#include <algorithm>
#include <cmath>

namespace chainwatt::netenergy {

void NetworkProfile::validate() const
{
    const std::string ctx = "network '" + name + "'";
    if (node_count < 1) throw validation_error(ctx + ": node_count must be >= 1");
    if (!(energy_per_tx_per_node_j >= 0)) throw validation_error(ctx + ": energy_per_tx_per_node must be >= 0");
    if (!(idle_power_per_node_w >= 0)) throw validation_error(ctx + ": idle_power_per_node must be >= 0");
    if (!(throughput_tps > 0)) throw validation_error(ctx + ": throughput must be > 0");
    if (!(consensus_overhead_j >= 0)) throw validation_error(ctx + ": consensus_overhead must be >= 0");
}

void RollupParams::validate() const
{
    if (!(gas_rollup_tx > 0)) throw validation_error("rollup params: gas_rollup_tx must be > 0");
    if (!(gas_simple_tx >= gas_rollup_tx)) {
        throw validation_error("rollup params: gas_simple_tx must be >= gas_rollup_tx");
    }
    if (!(prover_power_w >= 0)) throw validation_error("rollup params: prover_power must be >= 0");
    if (!(rollup_throughput_tps > 0)) throw validation_error("rollup params: rollup_throughput must be > 0");
}

RollupParams RollupParams::loopring()
{
    return RollupParams{21000.0, 365.0, 1050.0, 2100.0};
}

RollupParams RollupParams::round_figures()
{
    return RollupParams{36500.0, 365.0, 1050.0, 2100.0};
}

double redundant_energy_per_tx(const NetworkProfile& profile)
{
    profile.validate();
    return static_cast<double>(profile.node_count) * profile.energy_per_tx_per_node_j +
           profile.consensus_overhead_j;
}

double gas_reduction_factor(const RollupParams& params)
{
    params.validate();
    return params.gas_simple_tx / params.gas_rollup_tx;
}

double prover_energy_per_tx(const RollupParams& params)
{
    params.validate();
    return params.prover_power_w / params.rollup_throughput_tps;
}

double rollup_energy_per_tx(double base_j_per_tx, double factor, double prover_j_per_tx)
{
    if (!(base_j_per_tx >= 0)) throw validation_error("rollup_energy_per_tx: base must be >= 0");
    if (!(factor >= 1)) throw validation_error("rollup_energy_per_tx: factor must be >= 1");
    if (!(prover_j_per_tx >= 0)) throw validation_error("rollup_energy_per_tx: prover energy must be >= 0");
    return base_j_per_tx / factor + prover_j_per_tx;
}

double savings_fraction(double before_j_per_tx, double after_j_per_tx)
{
    if (!(before_j_per_tx > 0)) throw validation_error("savings_fraction: 'before' must be > 0");
    if (!(after_j_per_tx >= 0)) throw validation_error("savings_fraction: 'after' must be >= 0");
    return 1.0 - after_j_per_tx / before_j_per_tx;
}

double idle_adjusted_energy_per_tx(double per_tx_j, const NetworkProfile& profile)
{
    profile.validate();
    if (!(per_tx_j >= 0)) throw validation_error("idle_adjusted_energy_per_tx: energy must be >= 0");
    return per_tx_j + static_cast<double>(profile.node_count) * profile.idle_power_per_node_w /
                          profile.throughput_tps;
}

double pow_energy_per_tx(double network_power_w, double throughput_tps)
{
    if (!(network_power_w >= 0)) throw validation_error("pow_energy_per_tx: power must be >= 0");
    if (!(throughput_tps > 0)) throw validation_error("pow_energy_per_tx: throughput must be > 0");
    return network_power_w / throughput_tps;
}

int order_of_magnitude(double energy_j)
{
    if (!(energy_j > 0)) throw validation_error("order_of_magnitude: energy must be > 0");
    int oom = static_cast<int>(std::floor(std::log10(energy_j)));
    // log10 can land a hair off an exact power of ten; settle with pow, which
    // is exact for the integer exponents that matter here.
    while (std::pow(10.0, oom + 1) <= energy_j) ++oom;
    while (std::pow(10.0, oom) > energy_j) --oom;
    return oom;
}

ArchitectureReport compare_architectures(std::vector<std::pair<std::string, double>> figures)
{
    if (figures.empty()) throw validation_error("compare_architectures: no configurations given");
    ArchitectureReport report;
    report.rows.reserve(figures.size());
    for (auto& [name, energy] : figures) {
        report.rows.push_back({std::move(name), energy, order_of_magnitude(energy)});
    }
    std::stable_sort(report.rows.begin(), report.rows.end(),
                     [](const ArchitectureRow& a, const ArchitectureRow& b) {
                         return a.energy_per_tx_j > b.energy_per_tx_j;
                     });
    return report;
}

ArchitectureReport compare_architectures(std::span<const NetworkProfile> profiles)
{
    std::vector<std::pair<std::string, double>> figures;
    figures.reserve(profiles.size());
    for (const NetworkProfile& p : profiles) {
        figures.emplace_back(p.name, redundant_energy_per_tx(p));
    }
    return compare_architectures(std::move(figures));
}

} // namespace chainwatt::netenergy
