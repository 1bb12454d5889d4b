// Copyright (c) 2026 The jmsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "jmsim/u256.hpp"

#include <cmath>
#include <stdexcept>

namespace jmsim {

using uint128 = unsigned __int128;

U256 U256::from_hex(std::string_view hex) {
    if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) {
        hex.remove_prefix(2);
    }
    if (hex.empty() || hex.size() > 64) {
        throw std::invalid_argument("U256::from_hex: bad literal");
    }
    U256 r;
    for (char c : hex) {
        unsigned nibble;
        if (c >= '0' && c <= '9') nibble = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f') nibble = static_cast<unsigned>(c - 'a') + 10;
        else if (c >= 'A' && c <= 'F') nibble = static_cast<unsigned>(c - 'A') + 10;
        else throw std::invalid_argument("U256::from_hex: bad digit");
        r <<= 4;
        r.limbs_[0] |= nibble;
    }
    return r;
}

U256 U256::pow2(unsigned bits) {
    if (bits >= 256) throw std::invalid_argument("U256::pow2: bits >= 256");
    U256 r;
    r.limbs_[bits / 64] = 1ULL << (bits % 64);
    return r;
}

std::string U256::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s;
    bool started = false;
    for (int i = 3; i >= 0; --i) {
        for (int shift = 60; shift >= 0; shift -= 4) {
            unsigned nibble = static_cast<unsigned>((limbs_[static_cast<size_t>(i)] >> shift) & 0xf);
            if (nibble != 0) started = true;
            if (started) s.push_back(digits[nibble]);
        }
    }
    if (!started) s = "0";
    return s;
}

unsigned U256::bit_length() const {
    for (int i = 3; i >= 0; --i) {
        if (limbs_[static_cast<size_t>(i)] != 0) {
            return static_cast<unsigned>(64 * i + 64 - __builtin_clzll(limbs_[static_cast<size_t>(i)]));
        }
    }
    return 0;
}

double U256::to_double() const {
    unsigned bits = bit_length();
    if (bits <= 64) return static_cast<double>(limbs_[0]);
    unsigned shift = bits - 64;
    U256 top = *this >> shift;
    return std::ldexp(static_cast<double>(top.limbs_[0]), static_cast<int>(shift));
}

std::strong_ordering U256::operator<=>(const U256& o) const {
    for (int i = 3; i >= 0; --i) {
        auto a = limbs_[static_cast<size_t>(i)];
        auto b = o.limbs_[static_cast<size_t>(i)];
        if (a != b) return a < b ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

U256& U256::operator+=(const U256& o) {
    uint128 carry = 0;
    for (size_t i = 0; i < 4; ++i) {
        uint128 sum = static_cast<uint128>(limbs_[i]) + o.limbs_[i] + carry;
        limbs_[i] = static_cast<uint64_t>(sum);
        carry = sum >> 64;
    }
    return *this;
}

U256& U256::operator-=(const U256& o) {
    uint128 borrow = 0;
    for (size_t i = 0; i < 4; ++i) {
        uint128 diff = static_cast<uint128>(limbs_[i]) - o.limbs_[i] - borrow;
        limbs_[i] = static_cast<uint64_t>(diff);
        borrow = (diff >> 64) & 1;
    }
    return *this;
}

U256& U256::operator<<=(unsigned n) {
    if (n >= 256) {
        limbs_ = {0, 0, 0, 0};
        return *this;
    }
    unsigned limb_shift = n / 64;
    unsigned bit_shift = n % 64;
    for (int i = 3; i >= 0; --i) {
        uint64_t v = 0;
        int src = i - static_cast<int>(limb_shift);
        if (src >= 0) {
            v = limbs_[static_cast<size_t>(src)] << bit_shift;
            if (bit_shift != 0 && src > 0) {
                v |= limbs_[static_cast<size_t>(src - 1)] >> (64 - bit_shift);
            }
        }
        limbs_[static_cast<size_t>(i)] = v;
    }
    return *this;
}

U256& U256::operator>>=(unsigned n) {
    if (n >= 256) {
        limbs_ = {0, 0, 0, 0};
        return *this;
    }
    unsigned limb_shift = n / 64;
    unsigned bit_shift = n % 64;
    for (size_t i = 0; i < 4; ++i) {
        uint64_t v = 0;
        size_t src = i + limb_shift;
        if (src < 4) {
            v = limbs_[src] >> bit_shift;
            if (bit_shift != 0 && src + 1 < 4) {
                v |= limbs_[src + 1] << (64 - bit_shift);
            }
        }
        limbs_[i] = v;
    }
    return *this;
}

U256& U256::operator*=(uint64_t m) {
    uint128 carry = 0;
    for (size_t i = 0; i < 4; ++i) {
        uint128 prod = static_cast<uint128>(limbs_[i]) * m + carry;
        limbs_[i] = static_cast<uint64_t>(prod);
        carry = prod >> 64;
    }
    return *this;
}

U256& U256::operator/=(uint64_t d) {
    if (d == 0) throw std::domain_error("U256: division by zero");
    uint128 rem = 0;
    for (int i = 3; i >= 0; --i) {
        uint128 cur = (rem << 64) | limbs_[static_cast<size_t>(i)];
        limbs_[static_cast<size_t>(i)] = static_cast<uint64_t>(cur / d);
        rem = cur % d;
    }
    return *this;
}

uint64_t U256::mod_u64(uint64_t d) const {
    if (d == 0) throw std::domain_error("U256: division by zero");
    uint128 rem = 0;
    for (int i = 3; i >= 0; --i) {
        rem = ((rem << 64) | limbs_[static_cast<size_t>(i)]) % d;
    }
    return static_cast<uint64_t>(rem);
}

std::optional<U256> pow2_div(unsigned exp, uint64_t d) {
    if (d == 0 || d >= (1ULL << 63)) throw std::domain_error("pow2_div: divisor out of range");
    if (exp > 511) throw std::domain_error("pow2_div: exponent out of range");
    // Base-2^32 long division of the (exp+1)-bit dividend 1000...0.
    int top_digit = static_cast<int>(exp / 32);
    uint64_t rem = 0;
    U256 q;
    bool overflow = false;
    for (int i = top_digit; i >= 0; --i) {
        uint64_t digit = (i == top_digit) ? (1ULL << (exp % 32)) : 0;
        uint128 cur = (static_cast<uint128>(rem) << 32) | digit;
        uint64_t q_digit = static_cast<uint64_t>(cur / d);
        rem = static_cast<uint64_t>(cur % d);
        if (q_digit != 0) {
            if (32 * i + 64 - __builtin_clzll(q_digit) > 256) {
                overflow = true;
                break;
            }
            U256 part(q_digit);
            part <<= static_cast<unsigned>(32 * i);
            q += part;
        }
    }
    if (overflow) return std::nullopt;
    return q;
}

namespace {

// 320-bit product x * m as five limbs, least significant first.
std::array<uint64_t, 5> mul_wide(const U256& x, uint64_t m) {
    std::array<uint64_t, 5> out{};
    uint128 carry = 0;
    for (size_t i = 0; i < 4; ++i) {
        uint128 prod = static_cast<uint128>(x.limb(static_cast<int>(i))) * m + carry;
        out[i] = static_cast<uint64_t>(prod);
        carry = prod >> 64;
    }
    out[4] = static_cast<uint64_t>(carry);
    return out;
}

}  // namespace

U256 mul_floor(const U256& x, double s) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw std::domain_error("mul_floor: scale must be finite and >= 0");
    if (s == 0.0 || x.is_zero()) return U256(0);

    int exp2 = 0;
    double frac = std::frexp(s, &exp2);            // s = frac * 2^exp2, frac in [0.5, 1)
    auto mant = static_cast<uint64_t>(std::ldexp(frac, 53));  // exact 53-bit integer
    int shift = exp2 - 53;                         // s = mant * 2^shift

    std::array<uint64_t, 5> prod = mul_wide(x, mant);
    if (shift >= 0) {
        if (prod[4] != 0) return U256::max();
        U256 r;
        for (size_t i = 0; i < 4; ++i) r += U256(prod[i]) << static_cast<unsigned>(64 * i);
        unsigned bits = r.bit_length();
        if (bits != 0 && bits + static_cast<unsigned>(shift) > 256) return U256::max();
        return r << static_cast<unsigned>(shift);
    }
    unsigned rshift = static_cast<unsigned>(-shift);
    // Shift the 320-bit product right, dropping the fraction (floor).
    unsigned limb_shift = rshift / 64;
    unsigned bit_shift = rshift % 64;
    std::array<uint64_t, 5> shifted{};
    for (size_t i = 0; i < 5; ++i) {
        size_t src = i + limb_shift;
        uint64_t v = 0;
        if (src < 5) {
            v = prod[src] >> bit_shift;
            if (bit_shift != 0 && src + 1 < 5) v |= prod[src + 1] << (64 - bit_shift);
        }
        shifted[i] = v;
    }
    if (shifted[4] != 0) return U256::max();
    U256 r;
    for (size_t i = 0; i < 4; ++i) r += U256(shifted[i]) << static_cast<unsigned>(64 * i);
    return r;
}

U256 mul_div(const U256& x, uint64_t num, uint64_t den) {
    if (den == 0) throw std::domain_error("mul_div: division by zero");
    std::array<uint64_t, 5> prod = mul_wide(x, num);
    std::array<uint64_t, 5> quot{};
    uint128 rem = 0;
    for (int i = 4; i >= 0; --i) {
        uint128 cur = (rem << 64) | prod[static_cast<size_t>(i)];
        quot[static_cast<size_t>(i)] = static_cast<uint64_t>(cur / den);
        rem = cur % den;
    }
    if (quot[4] != 0) return U256::max();
    U256 r;
    for (size_t i = 0; i < 4; ++i) r += U256(quot[i]) << static_cast<unsigned>(64 * i);
    return r;
}

}  // namespace jmsim
