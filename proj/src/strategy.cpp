// Copyright (c) 2026 The jmsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "jmsim/strategy.hpp"

namespace jmsim {

ParticipationState initial_participation(const MinerSpec& spec) {
    return ParticipationState{is_always_on(spec)};
}

ParticipationState decide_participation(const MinerSpec& spec, ParticipationState state,
                                        int64_t next_height, double prev_difficulty) {
    struct Visitor {
        ParticipationState state;
        int64_t next_height;
        double prev_difficulty;

        ParticipationState operator()(const AlwaysOn&) const { return ParticipationState{true}; }

        ParticipationState operator()(const ThresholdJumper& jumper) const {
            if (!state.active && prev_difficulty < jumper.attack_in * jumper.base_difficulty) {
                return ParticipationState{true};
            }
            if (state.active && prev_difficulty > jumper.attack_out * jumper.base_difficulty) {
                return ParticipationState{false};
            }
            return state;
        }

        ParticipationState operator()(const EpochJumper& jumper) const {
            if (next_height % jumper.period == 0) return ParticipationState{!state.active};
            return state;
        }
    };
    return std::visit(Visitor{state, next_height, prev_difficulty}, spec.strategy);
}

}  // namespace jmsim
