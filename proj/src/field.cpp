#include "expander/field.hpp"

namespace expander {

PrimeField::PrimeField(u64 p) : p_(p) {
    if (p < 3) throw std::invalid_argument("modulus must be >= 3");
    if (p >= (u64{1} << 63)) throw std::invalid_argument("modulus must be < 2^63");
    if (!is_prime(p)) throw std::invalid_argument("modulus not prime");
}

u64 PrimeField::pow(u64 x, u64 e) const {
    assert(x < p_);
    u64 acc = 1, base = x;
    while (e > 0) {
        if (e & 1u) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1u;
    }
    return acc;
}

u64 PrimeField::inv(u64 x) const {
    if (x == 0) throw std::domain_error("zero has no multiplicative inverse");
    return pow(x, p_ - 2);
}

namespace {

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 acc = 1;
    a %= m;
    while (e > 0) {
        if (e & 1u) acc = mulmod(acc, a, m);
        a = mulmod(a, a, m);
        e >>= 1u;
    }
    return acc;
}

}  // namespace

bool PrimeField::is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1u) == 0) { d >>= 1u; ++s; }
    // this witness set decides primality for every n < 2^64
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

}  // namespace expander
