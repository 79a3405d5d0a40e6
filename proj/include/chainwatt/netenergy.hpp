// Copyright (c) 2026 The chainwatt developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace chainwatt::netenergy {

//! A transaction-processing network characterized by how much work every
//! node repeats per transaction.
struct NetworkProfile {
    std::string name;
    std::int64_t node_count = 1;
    double energy_per_tx_per_node_j = 0.0;
    double idle_power_per_node_w = 0.0;
    double throughput_tps = 0.0;
    //! Constant per-transaction consensus cost in J. Zero for voting-style
    //! consensus ("negligible"); used to carry the PoW mining energy when a
    //! proof-of-work network is expressed in this model.
    double consensus_overhead_j = 0.0;

    void validate() const;
};

//! Parameters of a zk-rollup: on-chain gas per simple transfer vs per
//! rolled-up transaction, and the prover's power and throughput.
struct RollupParams {
    double gas_simple_tx = 0.0;
    double gas_rollup_tx = 0.0;
    double prover_power_w = 0.0;
    double rollup_throughput_tps = 0.0;

    void validate() const;

    //! Published figures for a production rollup: 21000 gas per plain
    //! transfer vs 365 gas per rolled-up transfer at 2100 tx/s.
    static RollupParams loopring();

    //! Round-figure preset: gas ratio 100, same prover assumptions.
    static RollupParams round_figures();
};

//! One line of the architecture comparison.
struct ArchitectureRow {
    std::string name;
    double energy_per_tx_j = 0.0;
    int order_of_magnitude = 0; //!< floor(log10(energy_per_tx_j))
};

//! Architectures sorted by descending per-transaction energy.
struct ArchitectureReport {
    std::vector<ArchitectureRow> rows;
};

//! Energy spent network-wide per transaction when every node re-executes it:
//! node_count * per-node energy + consensus overhead. Idle draw is excluded;
//! see idle_adjusted_energy_per_tx.
double redundant_energy_per_tx(const NetworkProfile& profile);

//! How much a rollup shrinks per-transaction on-chain work, as a gas ratio.
double gas_reduction_factor(const RollupParams& params);

//! Prover energy amortized over the rollup's throughput.
double prover_energy_per_tx(const RollupParams& params);

//! Per-transaction energy with a rollup: base/factor + prover.
double rollup_energy_per_tx(double base_j_per_tx, double factor, double prover_j_per_tx);

//! Relative saving going from `before` to `after`; negative if `after` costs
//! more (rollups on tiny networks).
double savings_fraction(double before_j_per_tx, double after_j_per_tx);

//! Add the amortized idle draw of all nodes to a per-transaction figure.
double idle_adjusted_energy_per_tx(double per_tx_j, const NetworkProfile& profile);

//! Per-transaction energy of a PoW network: total power over throughput.
double pow_energy_per_tx(double network_power_w, double throughput_tps);

//! floor(log10(energy)); requires energy > 0.
int order_of_magnitude(double energy_j);

//! Build the comparison from already-resolved (name, J/tx) figures.
ArchitectureReport compare_architectures(std::vector<std::pair<std::string, double>> figures);

//! Build the comparison from network profiles via redundant_energy_per_tx.
//! Idle draw is deliberately excluded so the figures isolate the work a
//! transaction itself causes.
ArchitectureReport compare_architectures(std::span<const NetworkProfile> profiles);

} // namespace chainwatt::netenergy
