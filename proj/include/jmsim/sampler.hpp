// Copyright (c) 2026 The jmsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef JMSIM_SAMPLER_HPP
#define JMSIM_SAMPLER_HPP

namespace jmsim {

// Solve-time sampling. Finding a block is a run of independent hash trials,
// each succeeding with probability p, so the number of hashes n until the
// first success is geometric and can be drawn by inverting its CDF
// P(n) = 1 - (1-p)^n against a uniform variate.

// Baseline difficulty scale: one difficulty unit is Lz = 2^40 expected
// hashes. All difficulties in the simulator are expressed in Lz units.
inline constexpr double kLz = 1099511627776.0;  // 2^40

// Per-hash success probability p = 1 / (difficulty * Lz).
// difficulty must be > 2^-40 so that p < 1.
double success_probability(double difficulty);

// Number of hashes until the first success: the unique n >= 1 with
// P(n-1) < rand <= P(n), i.e. n = ceil(log(1-rand) / log(1-p)).
// Carried as a real number; exact for n < 2^53 (paper-scale runs stay
// below 2^50). Requires p in (0,1) and rand in [0,1).
double sample_num_hashes(double p, double rand);

// Time to find the next block: n / hashrate seconds.
double get_solve_time(double hashrate, double rand, double difficulty);

}  // namespace jmsim

#endif  // JMSIM_SAMPLER_HPP
