// Copyright (c) 2026 The jmsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef JMSIM_DIFFICULTY_HPP
#define JMSIM_DIFFICULTY_HPP

#include <cstdint>
#include <span>

#include "jmsim/u256.hpp"

namespace jmsim {

// Difficulty <-> target arithmetic plus the five retarget algorithms behind
// one dispatch. Difficulty is a positive real in Lz units (2^40 hashes per
// unit); targets are exact 256-bit integers with absolute scale
// target = 2^224 / absolute_difficulty.

enum class DaaAlgorithm {
    BitcoinEpoch,
    Bch144,
    DigiShield17,
    BtgWeighted,
    ImprovedAntiAttack,
};

// Target ceiling at the default minimum difficulty of 0.001 Lz units.
U256 default_pow_limit();

struct DaaConfig {
    DaaAlgorithm algorithm = DaaAlgorithm::BtgWeighted;
    double target_block_time_s = 600.0;  // T
    int window = 45;                     // N, blocks consulted per retarget
    double adjust = 0.998;               // damping factor in (0, 1]
    U256 pow_limit = default_pow_limit();

    // DigiShield shape (Zcash v3 defaults): timespan pulled 1/4 of the way
    // toward the window span, then clamped to [-16%, +32%] of it.
    double digishield_damp = 0.25;
    double digishield_timespan_min_frac = 0.84;
    double digishield_timespan_max_frac = 1.32;

    // Per-retarget ratio limits.
    double bitcoin_clamp_lo = 0.25;
    double bitcoin_clamp_hi = 4.0;
    double bch_clamp_lo = 0.5;
    double bch_clamp_hi = 2.0;

    // Anti-attack surge-guard spans, in units of T: last-5 sum at or below
    // surge5_span*T caps the target at avg5/4; last-10 at or below
    // surge10_fast_span*T caps at avg10/2, at or below surge10_slow_span*T
    // caps at avg10*2/3.
    double surge5_span = 1.5;
    double surge10_fast_span = 5.0;
    double surge10_slow_span = 10.0;

    // Canonical window and defaults for each algorithm (2016 / 144 / 17 /
    // 45 / 45), shared T = 600 s and adjust = 0.998.
    static DaaConfig defaults_for(DaaAlgorithm algorithm);
};

struct BlockRecord {
    int64_t height = 0;
    double difficulty = 0.0;     // Lz units
    double solve_time_s = 0.0;
    int winner = 0;              // miner-class id
    bool attacker_active = false;
    double total_hashrate = 0.0;  // hashes per second
};

// floor(2^224 / d_absolute). Errors when the target would be zero
// (d_absolute > 2^224) or d_absolute is not a positive finite real.
U256 target_from_absolute_difficulty(double d_absolute);
// Lz-unit wrapper: absolute difficulty is d * 2^40.
U256 target_from_difficulty(double d);

// Inverse maps, exact to within 2^-53 relative error.
double absolute_difficulty_from_target(const U256& target);
double difficulty_from_target(const U256& target);

// pow_limit as a minimum-difficulty bound (Lz units).
U256 pow_limit_from_min_difficulty(double min_difficulty);

// Retarget algorithms. `history` spans every record below the block being
// computed (so its size is that block's height); each algorithm reads only
// its own trailing window. All error on empty history.

// Fixed 2016-block epochs: at heights that are a multiple of the window the
// difficulty is rescaled by clamp(expected/actual timespan, 0.25, 4); at
// every other height it carries over unchanged.
double next_difficulty_bitcoin(std::span<const BlockRecord> history, const DaaConfig& cfg);

// Block-by-block full-window retarget over the last 144 blocks with ratio
// clamped to [0.5, 2].
double next_difficulty_bch(std::span<const BlockRecord> history, const DaaConfig& cfg);

// Mean target over the last 17 blocks scaled by the damped, clamped window
// timespan.
double next_difficulty_digishield(std::span<const BlockRecord> history, const DaaConfig& cfg);

// Linearly weighted solve-time mean (newest block weighted N) against the
// arithmetic mean window target: newTarget = avgTarget * avgT / (T * adjust).
double next_difficulty_btg_weighted(std::span<const BlockRecord> history, const DaaConfig& cfg);

// Anti-jumping retarget: weighted window plus surge caps on the last 5/10
// blocks and a 13/10 per-block fall limit. See the .cpp for the guard chain.
double next_difficulty_improved(std::span<const BlockRecord> history, const DaaConfig& cfg);

// Dispatch on cfg.algorithm.
double next_difficulty(std::span<const BlockRecord> history, const DaaConfig& cfg);

}  // namespace jmsim

#endif  // JMSIM_DIFFICULTY_HPP
