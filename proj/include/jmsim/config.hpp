// Copyright (c) 2026 The jmsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef JMSIM_CONFIG_HPP
#define JMSIM_CONFIG_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "jmsim/engine.hpp"

namespace jmsim {

// Scenario files: flat key = value text with one [section] per scenario.
//
//   [btg_equal]
//   daa = btg_weighted            # bitcoin_epoch|bch_144|digishield_17|
//   target_block_time_s = 600     #   btg_weighted|improved
//   num_blocks = 100000
//   seeds = 1..10
//   genesis_difficulty = 4
//   min_difficulty = 0.001        # sets pow_limit
//   miner.honest = always_on 1.0
//   miner.attacker = threshold_jumper 1.0 0.95 1.45 4
//
// Miner hashrates are in worker units: 1.0 is genesis_difficulty * Lz / T
// hashes per second, the rate that solves a genesis-difficulty block in T.
// Every DAA constant (window, adjust, clamps, thresholds) has a key; the
// defaults are the per-algorithm canonical values.

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Scenario {
    std::string name;
    SimConfig sim;
    std::vector<uint64_t> seeds;
    std::vector<std::string> miner_labels;  // parallel to sim.miners
};

struct RunManifest {
    std::vector<Scenario> scenarios;
};

RunManifest parse_manifest(std::istream& input);
RunManifest load_manifest(const std::string& path);

// Miner strategy spec in config syntax, e.g. "threshold_jumper 1.0 0.95 1.45 4".
MinerSpec parse_miner(const std::string& value, int id, double worker_hashrate_hs);

}  // namespace jmsim

#endif  // JMSIM_CONFIG_HPP
