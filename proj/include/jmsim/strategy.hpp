// Copyright (c) 2026 The jmsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef JMSIM_STRATEGY_HPP
#define JMSIM_STRATEGY_HPP

#include <cstdint>
#include <variant>

namespace jmsim {

// Per-block participation decisions: honest miners mine every block, a
// threshold jumper enters when difficulty dips below attack_in * base and
// leaves when it climbs past attack_out * base, an epoch jumper toggles at
// fixed height multiples (the Bitcoin retarget-cycle attack).

struct AlwaysOn {};

struct ThresholdJumper {
    double attack_in = 0.95;
    double attack_out = 1.45;
    double base_difficulty = 4.0;
};

struct EpochJumper {
    int64_t period = 2016;
};

using Strategy = std::variant<AlwaysOn, ThresholdJumper, EpochJumper>;

struct MinerSpec {
    int id = 0;
    double hashrate = 0.0;  // hashes per second
    Strategy strategy = AlwaysOn{};
};

struct ParticipationState {
    bool active = false;
};

// State before any block has been decided: honest miners on, jumpers off.
ParticipationState initial_participation(const MinerSpec& spec);

// Transition for the block at next_height (>= 1), observing the difficulty
// of block next_height - 1. Thresholds compare strictly; equality holds
// state. Total function.
ParticipationState decide_participation(const MinerSpec& spec, ParticipationState state,
                                        int64_t next_height, double prev_difficulty);

inline bool is_always_on(const MinerSpec& spec) {
    return std::holds_alternative<AlwaysOn>(spec.strategy);
}

}  // namespace jmsim

#endif  // JMSIM_STRATEGY_HPP
