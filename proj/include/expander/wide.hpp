#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace expander {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

/// Decimal rendering for 128-bit counters (E can exceed 2^64 in principle).
std::string to_string_u128(u128 v);

/// Parses a decimal string into u128. Throws std::invalid_argument on junk
/// or overflow.
u128 parse_u128(const std::string& s);

inline u128 checked_add(u128 a, u128 b) {
    u128 s = a + b;
    if (s < a) throw std::overflow_error("128-bit accumulator overflow");
    return s;
}

inline u128 checked_mul(u128 a, u128 b) {
    if (a != 0 && b > static_cast<u128>(-1) / a)
        throw std::overflow_error("128-bit product overflow");
    return a * b;
}

/// Exact comparison a^ea <= b^eb for 64-bit bases and small exponents.
/// Evaluated in limb arithmetic, never floating point.
bool pow_leq(u64 a, unsigned ea, u64 b, unsigned eb);

/// Exact comparison a1*a2 <= b1*b2 over 128-bit factors (256-bit products).
bool product_leq(u128 a1, u128 a2, u128 b1, u128 b2);

/// Floor integer square root.
u64 isqrt_u128(u128 x);

/// Floor k-th root of a 128-bit radicand.
u64 iroot(u128 x, unsigned k);

/// radicand^(1/k) as double; exact when the radicand is a perfect k-th power.
double real_root(u128 radicand, unsigned k);

}  // namespace expander
