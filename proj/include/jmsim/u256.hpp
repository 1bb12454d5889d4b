// Copyright (c) 2026 The jmsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef JMSIM_U256_HPP
#define JMSIM_U256_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace jmsim {

// Unsigned 256-bit integer over four 64-bit limbs, least significant first.
// Covers exactly what retarget math needs: add/sub, compare, shifts,
// multiply/divide by 64-bit scalars, and exact floor products against
// IEEE doubles. Arithmetic wraps like base_uint; callers stay in range.
class U256 {
public:
    constexpr U256() : limbs_{0, 0, 0, 0} {}
    constexpr U256(uint64_t v) : limbs_{v, 0, 0, 0} {}

    // Parses hex, with or without 0x prefix.
    static U256 from_hex(std::string_view hex);
    // 2^bits for bits in [0, 256).
    static U256 pow2(unsigned bits);
    static constexpr U256 max() {
        U256 r;
        r.limbs_ = {~0ULL, ~0ULL, ~0ULL, ~0ULL};
        return r;
    }

    std::string to_hex() const;  // minimal form, no 0x prefix
    // Nearest-double conversion from the top 64 significant bits
    // (relative error < 2^-53).
    double to_double() const;

    bool is_zero() const { return (limbs_[0] | limbs_[1] | limbs_[2] | limbs_[3]) == 0; }
    // Number of significant bits; 0 for zero.
    unsigned bit_length() const;
    uint64_t low64() const { return limbs_[0]; }
    uint64_t limb(int i) const { return limbs_[static_cast<size_t>(i)]; }

    friend bool operator==(const U256&, const U256&) = default;
    std::strong_ordering operator<=>(const U256& o) const;

    U256& operator+=(const U256& o);
    U256& operator-=(const U256& o);  // callers keep *this >= o
    U256& operator<<=(unsigned n);
    U256& operator>>=(unsigned n);
    U256& operator*=(uint64_t m);  // wraps on overflow past 256 bits
    U256& operator/=(uint64_t d);
    uint64_t mod_u64(uint64_t d) const;

    friend U256 operator+(U256 a, const U256& b) { return a += b; }
    friend U256 operator-(U256 a, const U256& b) { return a -= b; }
    friend U256 operator<<(U256 a, unsigned n) { return a <<= n; }
    friend U256 operator>>(U256 a, unsigned n) { return a >>= n; }
    friend U256 operator*(U256 a, uint64_t m) { return a *= m; }
    friend U256 operator/(U256 a, uint64_t d) { return a /= d; }

private:
    std::array<uint64_t, 4> limbs_;
};

// floor(2^exp / d) for exp up to 511 and 0 < d < 2^63.
// nullopt when the quotient does not fit in 256 bits.
std::optional<U256> pow2_div(unsigned exp, uint64_t d);

// Exact floor(x * s) for a finite double s >= 0. The double is decomposed
// into mantissa * 2^e and the product runs through a 320-bit intermediate,
// so the result is bit-reproducible. Saturates to U256::max() on overflow.
U256 mul_floor(const U256& x, double s);

// Exact floor(x * num / den) through a 320-bit intermediate.
// Saturates to U256::max() when the quotient exceeds 256 bits.
U256 mul_div(const U256& x, uint64_t num, uint64_t den);

}  // namespace jmsim

#endif  // JMSIM_U256_HPP
