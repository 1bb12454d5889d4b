// Copyright (c) 2026 The jmsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef JMSIM_ENGINE_HPP
#define JMSIM_ENGINE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "jmsim/difficulty.hpp"
#include "jmsim/strategy.hpp"

namespace jmsim {

// Per-block simulation loop: update participation from the previous block's
// difficulty, sum active hashrate, retarget, sample a solve time, attribute
// the block to a winner, append the record.

struct SimConfig {
    DaaConfig daa;
    std::vector<MinerSpec> miners;
    int64_t num_blocks = 1;
    uint64_t seed = 1;
    double genesis_difficulty = 4.0;  // Lz units; block 0 bootstraps from it
};

struct ChainState {
    std::vector<BlockRecord> records;
};

// Runs the full chain. Pure function of the config: the same seed yields a
// bit-identical record series. Solve-time draws come from one stream seeded
// with config.seed — matching the single RndSeri stream of the attack loop —
// and winner attribution from a second stream derived via splitmix64, so the
// difficulty/solve-time series is independent of miner count.
ChainState run(const SimConfig& config);

// Same loop, consuming the supplied uniform draws (one per block) for the
// solve-time samples. rands.size() must equal num_blocks.
ChainState replay_rand_sequence(const SimConfig& config, std::span<const double> rands);

// Hashrate honest miners contribute in aggregate (the worker unit used by
// metrics): sum of AlwaysOn hashrates.
double worker_hashrate(std::span<const MinerSpec> miners);

}  // namespace jmsim

#endif  // JMSIM_ENGINE_HPP
