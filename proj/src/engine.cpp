// Copyright (c) 2026 The jmsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "jmsim/engine.hpp"

#include <functional>
#include <stdexcept>
#include <utility>

#include "jmsim/rng.hpp"
#include "jmsim/sampler.hpp"

namespace jmsim {

namespace {

constexpr uint64_t kWinnerStreamSalt = 0x77696e6e65727331ULL;

void validate(const SimConfig& config) {
    if (config.num_blocks < 1) throw std::invalid_argument("SimConfig: num_blocks must be >= 1");
    if (!(config.genesis_difficulty > 0.0)) throw std::invalid_argument("SimConfig: genesis_difficulty must be positive");
    if (config.miners.empty()) throw std::invalid_argument("SimConfig: no miners");
    bool has_always_on = false;
    for (const MinerSpec& m : config.miners) {
        if (!(m.hashrate > 0.0)) throw std::invalid_argument("SimConfig: miner hashrate must be positive");
        if (is_always_on(m)) has_always_on = true;
        if (const auto* j = std::get_if<ThresholdJumper>(&m.strategy)) {
            if (!(j->attack_in < j->attack_out)) throw std::invalid_argument("SimConfig: attack_in must be below attack_out");
            if (!(j->base_difficulty > 0.0)) throw std::invalid_argument("SimConfig: base_difficulty must be positive");
        }
        if (const auto* j = std::get_if<EpochJumper>(&m.strategy)) {
            if (j->period < 1) throw std::invalid_argument("SimConfig: epoch period must be >= 1");
        }
    }
    if (!has_always_on) throw std::invalid_argument("SimConfig: at least one always-on miner required");
}

ChainState run_impl(const SimConfig& config, const std::function<double()>& next_rand) {
    validate(config);
    RngStream winner_stream(splitmix64(config.seed ^ kWinnerStreamSalt));

    std::vector<ParticipationState> states;
    states.reserve(config.miners.size());
    for (const MinerSpec& m : config.miners) states.push_back(initial_participation(m));

    ChainState chain;
    chain.records.reserve(static_cast<size_t>(config.num_blocks));

    for (int64_t height = 0; height < config.num_blocks; ++height) {
        if (height > 0) {
            double prev_difficulty = chain.records.back().difficulty;
            for (size_t i = 0; i < config.miners.size(); ++i) {
                states[i] = decide_participation(config.miners[i], states[i], height, prev_difficulty);
            }
        }

        double total_hashrate = 0.0;
        bool attacker_active = false;
        for (size_t i = 0; i < config.miners.size(); ++i) {
            if (!states[i].active) continue;
            total_hashrate += config.miners[i].hashrate;
            if (!is_always_on(config.miners[i])) attacker_active = true;
        }
        if (!(total_hashrate > 0.0)) throw std::logic_error("run: zero active hashrate");

        double difficulty = height == 0 ? config.genesis_difficulty
                                        : next_difficulty(chain.records, config.daa);
        double solve_time = get_solve_time(total_hashrate, next_rand(), difficulty);

        // Winner: categorical draw proportional to active hashrate, the
        // exact first-finder distribution of competing memoryless searches.
        // One draw per block keeps both streams aligned across configs.
        double pick = winner_stream.next_uniform() * total_hashrate;
        int winner = -1;
        double cumulative = 0.0;
        for (size_t i = 0; i < config.miners.size(); ++i) {
            if (!states[i].active) continue;
            cumulative += config.miners[i].hashrate;
            winner = config.miners[i].id;
            if (pick < cumulative) break;
        }

        chain.records.push_back(BlockRecord{
            .height = height,
            .difficulty = difficulty,
            .solve_time_s = solve_time,
            .winner = winner,
            .attacker_active = attacker_active,
            .total_hashrate = total_hashrate,
        });
    }
    return chain;
}

}  // namespace

ChainState run(const SimConfig& config) {
    RngStream solve_stream(config.seed);
    return run_impl(config, [&solve_stream] { return solve_stream.next_uniform(); });
}

ChainState replay_rand_sequence(const SimConfig& config, std::span<const double> rands) {
    if (std::cmp_not_equal(rands.size(), config.num_blocks)) {
        throw std::invalid_argument("replay_rand_sequence: rands length must equal num_blocks");
    }
    for (double r : rands) {
        if (!(r >= 0.0 && r < 1.0)) throw std::invalid_argument("replay_rand_sequence: rand outside [0,1)");
    }
    size_t cursor = 0;
    return run_impl(config, [&rands, &cursor] { return rands[cursor++]; });
}

double worker_hashrate(std::span<const MinerSpec> miners) {
    double sum = 0.0;
    for (const MinerSpec& m : miners) {
        if (is_always_on(m)) sum += m.hashrate;
    }
    return sum;
}

}  // namespace jmsim
