// Copyright (c) 2026 The jmsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "jmsim/sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace jmsim {

double success_probability(double difficulty) {
    if (!(difficulty > 0.0) || !std::isfinite(difficulty)) {
        throw std::domain_error("success_probability: difficulty must be positive and finite");
    }
    double p = 1.0 / (difficulty * kLz);
    if (!(p < 1.0)) {
        throw std::domain_error("success_probability: difficulty below the Lz floor (p >= 1)");
    }
    return p;
}

double sample_num_hashes(double p, double rand) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("sample_num_hashes: p outside (0,1)");
    }
    if (!(rand >= 0.0 && rand < 1.0)) {
        throw std::domain_error("sample_num_hashes: rand outside [0,1)");
    }
    // log1p keeps log(1-p) accurate for p near zero (p can be ~2^-42) and
    // log(1-rand) finite for every double below 1.
    const double log_q = std::log1p(-p);
    double n = std::ceil(std::log1p(-rand) / log_q);
    if (n < 1.0) n = 1.0;
    // Pin the half-open convention P(n-1) < rand <= P(n) at floating-point
    // boundaries, where the ceil of the log ratio can land one off.
    const auto cdf = [log_q](double k) { return -std::expm1(k * log_q); };
    if (cdf(n) < rand) {
        n += 1.0;
    } else if (n > 1.0 && cdf(n - 1.0) >= rand) {
        n -= 1.0;
    }
    return n;
}

double get_solve_time(double hashrate, double rand, double difficulty) {
    if (!(hashrate > 0.0) || !std::isfinite(hashrate)) {
        throw std::domain_error("get_solve_time: hashrate must be positive and finite");
    }
    return sample_num_hashes(success_probability(difficulty), rand) / hashrate;
}

}  // namespace jmsim
