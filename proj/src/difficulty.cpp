// Copyright (c) 2026 The jmsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "jmsim/difficulty.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "jmsim/sampler.hpp"

namespace jmsim {

namespace {

// Absolute-difficulty scale: target = 2^(256-32) / difficulty.
constexpr unsigned kTargetNumeratorBits = 224;

double clamp_ratio(double ratio, double lo, double hi) {
    return std::min(hi, std::max(lo, ratio));
}

// Trailing window of at most `want` records.
std::span<const BlockRecord> tail(std::span<const BlockRecord> history, size_t want) {
    size_t n = std::min(history.size(), want);
    return history.subspan(history.size() - n, n);
}

double window_solve_time_sum(std::span<const BlockRecord> window) {
    double sum = 0.0;
    for (const BlockRecord& r : window) sum += r.solve_time_s;
    return sum;
}

U256 window_target_sum(std::span<const BlockRecord> window) {
    U256 sum;
    for (const BlockRecord& r : window) sum += target_from_difficulty(r.difficulty);
    return sum;
}

// Keeps the double-space algorithms above the configured target ceiling.
double apply_difficulty_floor(double d, const DaaConfig& cfg) {
    double floor_d = difficulty_from_target(cfg.pow_limit);
    return std::max(d, floor_d);
}

double finish_target(U256 next_target, const DaaConfig& cfg) {
    if (next_target > cfg.pow_limit) next_target = cfg.pow_limit;
    if (next_target.is_zero()) next_target = U256(1);
    return difficulty_from_target(next_target);
}

}  // namespace

U256 default_pow_limit() {
    static const U256 limit = pow_limit_from_min_difficulty(0.001);
    return limit;
}

DaaConfig DaaConfig::defaults_for(DaaAlgorithm algorithm) {
    DaaConfig cfg;
    cfg.algorithm = algorithm;
    switch (algorithm) {
        case DaaAlgorithm::BitcoinEpoch: cfg.window = 2016; break;
        case DaaAlgorithm::Bch144: cfg.window = 144; break;
        case DaaAlgorithm::DigiShield17: cfg.window = 17; break;
        case DaaAlgorithm::BtgWeighted: cfg.window = 45; break;
        case DaaAlgorithm::ImprovedAntiAttack: cfg.window = 45; break;
    }
    return cfg;
}

U256 target_from_absolute_difficulty(double d_absolute) {
    if (!(d_absolute > 0.0) || !std::isfinite(d_absolute)) {
        throw std::domain_error("target_from_difficulty: difficulty must be positive and finite");
    }
    // d = mant * 2^shift with mant an exact 53-bit integer, so
    // floor(2^224 / d) = floor(2^(224-shift) / mant) is computed exactly.
    int exp2 = 0;
    double frac = std::frexp(d_absolute, &exp2);
    auto mant = static_cast<uint64_t>(std::ldexp(frac, 53));
    int shift = exp2 - 53;
    int pow = static_cast<int>(kTargetNumeratorBits) - shift;
    if (pow < 0) throw std::domain_error("target_from_difficulty: difficulty too large, target would be zero");
    auto q = pow2_div(static_cast<unsigned>(pow), mant);
    if (!q) return U256::max();  // below any representable difficulty; later clamps apply
    if (q->is_zero()) throw std::domain_error("target_from_difficulty: difficulty too large, target would be zero");
    return *q;
}

U256 target_from_difficulty(double d) {
    return target_from_absolute_difficulty(std::ldexp(d, 40));  // d * Lz, exact scaling
}

double absolute_difficulty_from_target(const U256& target) {
    if (target.is_zero()) throw std::domain_error("difficulty_from_target: zero target");
    return std::ldexp(1.0, static_cast<int>(kTargetNumeratorBits)) / target.to_double();
}

double difficulty_from_target(const U256& target) {
    return std::ldexp(absolute_difficulty_from_target(target), -40);
}

U256 pow_limit_from_min_difficulty(double min_difficulty) {
    return target_from_difficulty(min_difficulty);
}

double next_difficulty_bitcoin(std::span<const BlockRecord> history, const DaaConfig& cfg) {
    if (history.empty()) throw std::invalid_argument("next_difficulty_bitcoin: empty history");
    size_t height = history.size();
    size_t epoch = static_cast<size_t>(cfg.window);
    if (height % epoch != 0) return history.back().difficulty;
    if (height < epoch) throw std::invalid_argument("next_difficulty_bitcoin: insufficient history at epoch boundary");
    double actual = window_solve_time_sum(tail(history, epoch));
    double expected = static_cast<double>(epoch) * cfg.target_block_time_s;
    double ratio = clamp_ratio(expected / actual, cfg.bitcoin_clamp_lo, cfg.bitcoin_clamp_hi);
    return apply_difficulty_floor(history.back().difficulty * ratio, cfg);
}

double next_difficulty_bch(std::span<const BlockRecord> history, const DaaConfig& cfg) {
    if (history.empty()) throw std::invalid_argument("next_difficulty_bch: empty history");
    auto window = tail(history, static_cast<size_t>(cfg.window));
    double actual = window_solve_time_sum(window);
    double expected = static_cast<double>(window.size()) * cfg.target_block_time_s;
    double ratio = clamp_ratio(expected / actual, cfg.bch_clamp_lo, cfg.bch_clamp_hi);
    // The window mean anchors the retarget (scaling the previous difficulty
    // by an overlapping-window ratio rings between the clamps); the [0.5, 2]
    // proportional limit still applies to the per-block change.
    double mean_difficulty = 0.0;
    for (const BlockRecord& r : window) mean_difficulty += r.difficulty;
    mean_difficulty /= static_cast<double>(window.size());
    double prev = history.back().difficulty;
    double next = clamp_ratio(mean_difficulty * ratio, prev * cfg.bch_clamp_lo, prev * cfg.bch_clamp_hi);
    return apply_difficulty_floor(next, cfg);
}

double next_difficulty_digishield(std::span<const BlockRecord> history, const DaaConfig& cfg) {
    if (history.empty()) throw std::invalid_argument("next_difficulty_digishield: empty history");
    auto window = tail(history, static_cast<size_t>(cfg.window));
    auto n = static_cast<uint64_t>(window.size());
    U256 avg_target = window_target_sum(window) / n;
    double expected = static_cast<double>(n) * cfg.target_block_time_s;
    double actual = window_solve_time_sum(window);
    double damped = expected + (actual - expected) * cfg.digishield_damp;
    damped = clamp_ratio(damped, cfg.digishield_timespan_min_frac * expected,
                         cfg.digishield_timespan_max_frac * expected);
    U256 next_target = mul_floor(avg_target, damped / expected);
    return finish_target(next_target, cfg);
}

double next_difficulty_btg_weighted(std::span<const BlockRecord> history, const DaaConfig& cfg) {
    if (history.empty()) throw std::invalid_argument("next_difficulty_btg_weighted: empty history");
    auto window = tail(history, static_cast<size_t>(cfg.window));
    auto n = static_cast<uint64_t>(window.size());
    // Newest block carries weight n, oldest weight 1; weights sum to n(n+1)/2.
    double weighted_time = 0.0;
    for (size_t k = 0; k < window.size(); ++k) {
        weighted_time += static_cast<double>(k + 1) * window[k].solve_time_s;
    }
    double avg_time = 2.0 * weighted_time / (static_cast<double>(n) * (static_cast<double>(n) + 1.0));
    U256 avg_target = window_target_sum(window) / n;
    U256 next_target = mul_floor(avg_target, avg_time / (cfg.target_block_time_s * cfg.adjust));
    return finish_target(next_target, cfg);
}

double next_difficulty_improved(std::span<const BlockRecord> history, const DaaConfig& cfg) {
    if (history.empty()) throw std::invalid_argument("next_difficulty_improved: empty history");
    const auto n = static_cast<size_t>(cfg.window);
    const double target_time = cfg.target_block_time_s;

    // Window of exactly N blocks, front-padded with the earliest record
    // until enough real history exists.
    std::vector<BlockRecord> window;
    window.reserve(n);
    for (size_t i = history.size() < n ? n - history.size() : 0; i > 0; --i) {
        window.push_back(history.front());
    }
    auto real = tail(history, n);
    window.insert(window.end(), real.begin(), real.end());

    // Weighted sums over the window, i = 1 oldest ... N newest. The last
    // 10 and last 5 blocks accumulate separately (the final 5 feed both).
    double sum_time = 0.0;
    U256 sum_target;
    double last5_time = 0.0, last10_time = 0.0;
    U256 last5_target, last10_target;
    for (size_t k = 0; k < n; ++k) {
        size_t i = k + 1;
        double solve_time = window[k].solve_time_s;
        U256 target = target_from_difficulty(window[k].difficulty);
        sum_time += solve_time * static_cast<double>(i);
        sum_target += target;
        if (i + 10 > n) {
            last10_time += solve_time;
            last10_target += target;
        }
        if (i + 5 > n) {
            last5_time += solve_time;
            last5_target += target;
        }
    }

    // Keep sum_time reasonable in case strange solvetimes occurred.
    const double dn = static_cast<double>(n);
    if (sum_time < dn * dn * target_time / 6.0) {
        sum_time = dn * dn * target_time / 6.0;
    }

    // Base retarget. Scalar factors are combined first, in this fixed
    // order, then applied to the exact target sum.
    const double time_term = 2.0 * sum_time / (dn * (dn + 1.0));
    const double scale = time_term * cfg.adjust / (target_time * dn);
    U256 next_target = mul_floor(sum_target, scale);

    // Surge guards: a burst of fast blocks caps the target hard.
    U256 avg5 = last5_target / 5;
    U256 avg10 = last10_target / 10;
    if (last5_time <= cfg.surge5_span * target_time) {
        next_target = std::min(next_target, avg5 / 4);
    } else if (last10_time <= cfg.surge10_fast_span * target_time) {
        next_target = std::min(next_target, avg10 / 2);
    } else if (last10_time <= cfg.surge10_slow_span * target_time) {
        next_target = std::min(next_target, mul_div(avg10, 2, 3));
    }

    // Fall guard: difficulty drops at most 13/10 in target terms per block.
    U256 last_target = target_from_difficulty(window.back().difficulty);
    next_target = std::min(next_target, mul_div(last_target, 13, 10));

    return finish_target(next_target, cfg);
}

double next_difficulty(std::span<const BlockRecord> history, const DaaConfig& cfg) {
    switch (cfg.algorithm) {
        case DaaAlgorithm::BitcoinEpoch: return next_difficulty_bitcoin(history, cfg);
        case DaaAlgorithm::Bch144: return next_difficulty_bch(history, cfg);
        case DaaAlgorithm::DigiShield17: return next_difficulty_digishield(history, cfg);
        case DaaAlgorithm::BtgWeighted: return next_difficulty_btg_weighted(history, cfg);
        case DaaAlgorithm::ImprovedAntiAttack: return next_difficulty_improved(history, cfg);
    }
    throw std::logic_error("next_difficulty: unknown algorithm");
}

}  // namespace jmsim
