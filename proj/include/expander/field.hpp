#pragma once

#include <cassert>

#include "expander/wide.hpp"

namespace expander {

/// Arithmetic context for the prime field F_p. Element values are plain
/// canonical residues in [0, p-1]; every operation assumes and preserves
/// that form. Copying is cheap, the object is immutable.
class PrimeField {
public:
    /// Throws std::invalid_argument unless p is prime, >= 3 and < 2^63.
    explicit PrimeField(u64 p);

    u64 modulus() const { return p_; }

    u64 reduce(u128 v) const { return static_cast<u64>(v % p_); }

    u64 add(u64 x, u64 y) const {
        assert(x < p_ && y < p_);
        u64 s = x + y;
        return s >= p_ ? s - p_ : s;
    }

    u64 sub(u64 x, u64 y) const {
        assert(x < p_ && y < p_);
        return x >= y ? x - y : x + (p_ - y);
    }

    u64 neg(u64 x) const {
        assert(x < p_);
        return x == 0 ? 0 : p_ - x;
    }

    u64 mul(u64 x, u64 y) const {
        assert(x < p_ && y < p_);
        return static_cast<u64>(static_cast<u128>(x) * y % p_);
    }

    u64 pow(u64 x, u64 e) const;

    /// Multiplicative inverse by Fermat exponentiation.
    /// Throws std::domain_error on x == 0.
    u64 inv(u64 x) const;

    bool operator==(const PrimeField&) const = default;

    /// Deterministic Miller-Rabin, valid for all n < 2^64.
    static bool is_prime(u64 n);

private:
    u64 p_;
};

}  // namespace expander
