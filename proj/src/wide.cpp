#include "expander/wide.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace expander {

std::string to_string_u128(u128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v > 0) {
        out.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

u128 parse_u128(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    u128 v = 0;
    constexpr u128 kMax = static_cast<u128>(-1);
    for (char ch : s) {
        if (ch < '0' || ch > '9') throw std::invalid_argument("bad integer literal: " + s);
        unsigned d = static_cast<unsigned>(ch - '0');
        if (v > (kMax - d) / 10) throw std::invalid_argument("integer literal overflows 128 bits");
        v = v * 10 + d;
    }
    return v;
}

namespace {

// Little-endian 64-bit limb vectors, used only for cold exact comparisons.
using Limbs = std::vector<u64>;

Limbs from_u128(u128 v) {
    Limbs out;
    while (v > 0) {
        out.push_back(static_cast<u64>(v));
        v >>= 64;
    }
    return out;
}

Limbs limb_mul(const Limbs& a, const Limbs& b) {
    if (a.empty() || b.empty()) return {};
    Limbs out(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        u128 carry = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            u128 cur = static_cast<u128>(a[i]) * b[j] + out[i + j] + carry;
            out[i + j] = static_cast<u64>(cur);
            carry = cur >> 64;
        }
        out[i + b.size()] = static_cast<u64>(carry);
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

Limbs limb_pow(u64 base, unsigned exp) {
    Limbs acc{1};
    Limbs sq = from_u128(base);
    while (exp > 0) {
        if (exp & 1u) acc = limb_mul(acc, sq);
        sq = limb_mul(sq, sq);
        exp >>= 1u;
    }
    return acc;
}

int limb_cmp(const Limbs& a, const Limbs& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

}  // namespace

bool pow_leq(u64 a, unsigned ea, u64 b, unsigned eb) {
    return limb_cmp(limb_pow(a, ea), limb_pow(b, eb)) <= 0;
}

bool product_leq(u128 a1, u128 a2, u128 b1, u128 b2) {
    return limb_cmp(limb_mul(from_u128(a1), from_u128(a2)),
                    limb_mul(from_u128(b1), from_u128(b2))) <= 0;
}

u64 isqrt_u128(u128 x) {
    if (x == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(x)));
    // settle float error exactly
    while (r > 0 && static_cast<u128>(r) * r > x) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= x && r + 1 != 0) ++r;
    return r;
}

u64 iroot(u128 x, unsigned k) {
    if (k == 0) throw std::invalid_argument("zeroth root");
    if (k == 1) {
        if (x > static_cast<u128>(UINT64_MAX)) throw std::overflow_error("root exceeds 64 bits");
        return static_cast<u64>(x);
    }
    if (x == 0) return 0;
    auto pow_le = [&](u64 r) {
        // r^k <= x, saturating
        u128 acc = 1;
        for (unsigned i = 0; i < k; ++i) {
            if (r != 0 && acc > static_cast<u128>(-1) / r) return false;
            acc *= r;
            if (acc > x) return false;
        }
        return true;
    };
    u64 lo = 1, hi = UINT64_MAX;
    // shrink hi to a sane starting point
    double guess = std::pow(static_cast<double>(x), 1.0 / k);
    if (guess < static_cast<double>(UINT64_MAX) / 4) hi = static_cast<u64>(guess) + 2;
    while (lo < hi) {
        u64 mid = lo + (hi - lo + 1) / 2;
        if (pow_le(mid)) lo = mid; else hi = mid - 1;
    }
    return lo;
}

double real_root(u128 radicand, unsigned k) {
    if (radicand == 0) return 0.0;
    u64 r = iroot(radicand, k);
    u128 acc = 1;
    bool exact = true;
    for (unsigned i = 0; i < k && exact; ++i) {
        if (r != 0 && acc > static_cast<u128>(-1) / r) exact = false;
        else acc *= r;
    }
    if (exact && acc == radicand) return static_cast<double>(r);
    return std::pow(static_cast<double>(radicand), 1.0 / k);
}

}  // namespace expander
