// Copyright (c) 2026 The jmsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef JMSIM_TESTS_ORACLE_ANTI_ATTACK_HPP
#define JMSIM_TESTS_ORACLE_ANTI_ATTACK_HPP

#include <span>

#include "jmsim/difficulty.hpp"

namespace jmsim::test {

// Straight-line transcription of the anti-attack retarget, kept independent
// of the library's windowing and dispatch: plain loop over an N-record
// window in the published line order. Same arithmetic primitives, so
// results must agree with next_difficulty_improved bit for bit.
inline U256 anti_attack_next_target(std::span<const double> solve_time, std::span<const double> difficulty,
                             double t, double adjust, const U256& pow_limit, double surge5_span = 1.5,
                             double surge10_fast_span = 5.0, double surge10_slow_span = 10.0) {
    const int n = static_cast<int>(solve_time.size());

    double sum_time = 0.0;
    U256 sum_target;
    double sum_last10_time = 0.0, sum_last5_time = 0.0;
    U256 sum_last10_target, sum_last5_target;
    for (int i = 1; i <= n; ++i) {
        double st = solve_time[static_cast<size_t>(i - 1)];
        sum_time += st * static_cast<double>(i);
        U256 target = target_from_difficulty(difficulty[static_cast<size_t>(i - 1)]);
        sum_target += target;
        if (i >= n - 10 + 1) {
            sum_last10_time += st;
            sum_last10_target += target;
        }
        if (i >= n - 5 + 1) {
            sum_last5_time += st;
            sum_last5_target += target;
        }
    }

    const double dn = static_cast<double>(n);
    if (sum_time < dn * dn * t / 6.0) {
        sum_time = dn * dn * t / 6.0;
    }

    const double time_term = 2.0 * sum_time / (dn * (dn + 1.0));
    const double scale = time_term * adjust / (t * dn);
    U256 next_target = mul_floor(sum_target, scale);

    U256 avg_last5_target = sum_last5_target / 5;
    U256 avg_last10_target = sum_last10_target / 10;
    if (sum_last5_time <= surge5_span * t) {
        if (next_target > avg_last5_target / 4) next_target = avg_last5_target / 4;
    } else if (sum_last10_time <= surge10_fast_span * t) {
        if (next_target > avg_last10_target / 2) next_target = avg_last10_target / 2;
    } else if (sum_last10_time <= surge10_slow_span * t) {
        if (next_target > mul_div(avg_last10_target, 2, 3)) next_target = mul_div(avg_last10_target, 2, 3);
    }

    U256 last_target = target_from_difficulty(difficulty[static_cast<size_t>(n - 1)]);
    if (next_target > mul_div(last_target, 13, 10)) next_target = mul_div(last_target, 13, 10);
    if (next_target > pow_limit) next_target = pow_limit;
    if (next_target.is_zero()) next_target = U256(1);
    return next_target;
}

}  // namespace jmsim::test

#endif  // JMSIM_TESTS_ORACLE_ANTI_ATTACK_HPP
