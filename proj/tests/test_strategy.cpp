// Copyright (c) 2026 The jmsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <doctest.h>

#include <random>

#include "jmsim/strategy.hpp"

using namespace jmsim;

TEST_CASE("always-on miners are active at every height") {
    MinerSpec honest{0, 1.0, AlwaysOn{}};
    CHECK(initial_participation(honest).active);
    ParticipationState state{false};
    for (int64_t h = 1; h < 50; ++h) {
        state = decide_participation(honest, state, h, 0.01);
        CHECK(state.active);
    }
}

TEST_CASE("threshold jumper entry and exit") {
    MinerSpec attacker{1, 1.0, ThresholdJumper{0.95, 1.45, 4.0}};
    ParticipationState state = initial_participation(attacker);
    CHECK(!state.active);

    // 3.6 = 0.9 * BaseD, below the entry threshold
    state = decide_participation(attacker, state, 1, 3.6);
    CHECK(state.active);

    // mid-band difficulties hold state both ways
    state = decide_participation(attacker, state, 2, 4.5);
    CHECK(state.active);

    // 6.0 = 1.5 * BaseD, above the exit threshold
    state = decide_participation(attacker, state, 3, 6.0);
    CHECK(!state.active);

    state = decide_participation(attacker, state, 4, 4.5);
    CHECK(!state.active);

    // strict comparisons: equality at either threshold holds state
    state = decide_participation(attacker, ParticipationState{false}, 5, 0.95 * 4.0);
    CHECK(!state.active);
    state = decide_participation(attacker, ParticipationState{true}, 6, 1.45 * 4.0);
    CHECK(state.active);
}

TEST_CASE("epoch jumper toggles at height multiples") {
    MinerSpec attacker{1, 1.0, EpochJumper{2016}};
    ParticipationState state{true};
    state = decide_participation(attacker, state, 4032, 4.0);
    CHECK(!state.active);
    state = decide_participation(attacker, state, 4033, 4.0);
    CHECK(!state.active);
    state = decide_participation(attacker, state, 6048, 4.0);
    CHECK(state.active);
}

TEST_CASE("epoch jumper: floor(n/p) toggles over n blocks") {
    MinerSpec attacker{1, 1.0, EpochJumper{7}};
    ParticipationState state = initial_participation(attacker);
    const int64_t n = 1000;
    int toggles = 0;
    for (int64_t h = 1; h <= n; ++h) {
        ParticipationState next = decide_participation(attacker, state, h, 4.0);
        if (next.active != state.active) ++toggles;
        state = next;
    }
    CHECK(toggles == n / 7);
}

TEST_CASE("threshold hysteresis over random difficulty series") {
    MinerSpec attacker{1, 1.0, ThresholdJumper{0.95, 1.45, 4.0}};
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> d_dist(2.0, 7.0);
    ParticipationState state = initial_participation(attacker);
    int last_event = 0;  // +1 activation, -1 deactivation
    for (int64_t h = 1; h < 20000; ++h) {
        double prev_d = d_dist(rng);
        ParticipationState next = decide_participation(attacker, state, h, prev_d);
        if (next.active && !state.active) {
            CHECK(prev_d < 0.95 * 4.0);  // never activates at or above attack_in * base
            CHECK(last_event != 1);      // events strictly alternate
            last_event = 1;
        } else if (!next.active && state.active) {
            CHECK(prev_d > 1.45 * 4.0);  // never deactivates at or below attack_out * base
            CHECK(last_event != -1);
            last_event = -1;
        }
        state = next;
    }
}
