#pragma once

#include <random>
#include <unordered_map>
#include <vector>

#include "expander/wide.hpp"

namespace expander {

// Reproducibility notes: std::mt19937_64 output is pinned by the standard,
// so equal seeds give equal streams everywhere. std::uniform_int_distribution
// is implementation-defined and must not be used; bounded draws below use
// plain rejection sampling instead.

/// splitmix64 step, used to derive independent sub-seeds (per trial, per set).
inline u64 splitmix64(u64& state) {
    u64 z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline u64 derive_seed(u64 base, u64 stream, u64 index) {
    u64 s = base ^ (0x6a09e667f3bcc909ull * (stream + 1)) ^ (0xbb67ae8584caa73bull * (index + 1));
    return splitmix64(s);
}

/// Uniform draw from [0, n) by rejection from the top of the 64-bit range.
inline u64 bounded_u64(std::mt19937_64& rng, u64 n) {
    if (n == 0) throw std::invalid_argument("bounded_u64: empty range");
    u64 limit = UINT64_MAX - UINT64_MAX % n;
    u64 r;
    do { r = rng(); } while (r >= limit);
    return r % n;
}

/// n distinct values from [lo, hi], uniform without replacement, by partial
/// Fisher-Yates with a sparse swap map (the range is never materialized).
inline std::vector<u64> sample_without_replacement(u64 lo, u64 hi, u64 n, std::mt19937_64& rng) {
    if (hi < lo || n > hi - lo + 1) throw std::invalid_argument("sample size exceeds range");
    std::unordered_map<u64, u64> moved;
    std::vector<u64> out;
    out.reserve(n);
    u64 span = hi - lo + 1;
    for (u64 i = 0; i < n; ++i) {
        u64 j = i + bounded_u64(rng, span - i);
        auto at = [&](u64 k) {
            auto it = moved.find(k);
            return it == moved.end() ? lo + k : it->second;
        };
        u64 picked = at(j);
        moved[j] = at(i);
        out.push_back(picked);
    }
    return out;
}

}  // namespace expander
