// Copyright (c) 2026 The jmsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef JMSIM_RNG_HPP
#define JMSIM_RNG_HPP

#include <cstdint>
#include <random>

namespace jmsim {

// Seeded uniform stream for deterministic simulation runs.
//
// The generator is std::mt19937_64, whose output sequence is fixed by the
// standard, so a seed reproduces the same draws on every platform and
// version. Doubles are derived with the explicit 53-bit mapping
// (x >> 11) * 2^-53 rather than uniform_real_distribution, which is not
// bit-stable across standard library implementations. The seed -> stream
// mapping is part of the public contract.
class RngStream {
public:
    explicit RngStream(uint64_t seed) : seed_(seed), engine_(seed) {}

    // Next uniform draw in [0, 1). The largest value produced is
    // (2^53 - 1) / 2^53, so log1p(-u) is always finite.
    double next_uniform() {
        ++position_;
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    uint64_t seed() const { return seed_; }
    uint64_t position() const { return position_; }

private:
    uint64_t seed_;
    uint64_t position_ = 0;
    std::mt19937_64 engine_;
};

// splitmix64 step; used to derive independent stream seeds from one run seed.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace jmsim

#endif  // JMSIM_RNG_HPP
