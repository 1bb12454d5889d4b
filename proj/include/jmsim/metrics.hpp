// Copyright (c) 2026 The jmsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef JMSIM_METRICS_HPP
#define JMSIM_METRICS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "jmsim/engine.hpp"

namespace jmsim {

// Post-run statistics: per-class blocks won, active time, average block
// time, and mining efficiency, plus the attack episodes of the run.
//
// Mining efficiency is blocks won per second of active mining per worker
// unit of hashrate, i.e. 1 / (avg_block_time * hashrate / worker_hashrate)
// — the definition that reproduces the published per-class numbers.

struct ClassSummary {
    int id = 0;
    int64_t blocks_won = 0;
    double active_time_s = 0.0;
    std::optional<double> avg_block_time_s;  // absent when no blocks won
    double efficiency = 0.0;
    double relative_hashrate = 0.0;  // hashrate / worker_hashrate
};

struct AttackEpisode {
    int64_t start_height = 0;
    int64_t end_height = 0;  // inclusive
    double mean_difficulty = 0.0;
};

struct RunSummary {
    std::vector<ClassSummary> classes;
    std::vector<AttackEpisode> attack_episodes;
    int64_t num_blocks = 0;
    double total_time_s = 0.0;
};

// Per-miner activity is reconstructed by replaying the participation state
// machine over the chain's difficulty series; the replay is exact because
// decide_participation is a pure function of height and prior difficulty.
RunSummary summarize(const ChainState& chain, std::span<const MinerSpec> miners);

struct SeriesRow {
    int64_t height = 0;
    double difficulty = 0.0;
    double total_hashrate = 0.0;
    bool attacker_active = false;
};

// Column-oriented echo of the chain for plotting/CSV.
std::vector<SeriesRow> difficulty_series(const ChainState& chain);

}  // namespace jmsim

#endif  // JMSIM_METRICS_HPP
