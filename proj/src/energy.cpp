#include "expander/energy.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace expander {

namespace {

struct Triple {
    u64 x, y, z;
    bool operator==(const Triple&) const = default;
};

struct TripleHash {
    static u64 mix(u64 v) {
        v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ull;
        v = (v ^ (v >> 27)) * 0x94d049bb133111ebull;
        return v ^ (v >> 31);
    }
    std::size_t operator()(const Triple& t) const {
        return mix(t.x + 0x9e3779b97f4a7c15ull * (mix(t.y) + 0x9e3779b97f4a7c15ull * mix(t.z)));
    }
};

using TripleSet = std::unordered_set<Triple, TripleHash>;

// Per-a slices of the maps g, h, resolved once before the hot loops.
struct ASlices {
    std::vector<u64> ga, inv_ga, ha;
};

ASlices resolve(const FSet& A, const ExpanderSpec& spec) {
    const PrimeField& f = spec.field();
    ASlices s;
    s.ga.resize(A.size());
    s.inv_ga.resize(A.size());
    s.ha.resize(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) {
        u64 a = A.elements()[i];
        s.ga[i] = spec.g.value_at(a);  // throws on domain violation
        s.inv_ga[i] = f.inv(s.ga[i]);
        s.ha[i] = spec.h.value_at(a);
    }
    return s;
}

void validate_inputs(const FSet& A, const FSet& B, const FSet& C, const ExpanderSpec& spec) {
    const u64 p = spec.field().modulus();
    if (A.modulus() != p || B.modulus() != p || C.modulus() != p)
        throw std::invalid_argument("modulus mismatch");
    if (A.empty() || B.empty() || C.empty())
        throw std::invalid_argument("energy counts need nonempty sets");
}

// Emits every triple for one a-slice into `out`.
void emit_slice(Variant variant, std::size_t i, const ASlices& s, const FSet& B, const FSet& C,
                const PrimeField& f, TripleSet& out) {
    for (u64 b : B.elements()) {
        const u64 fab = f.mul(s.ga[i], f.add(s.ha[i], b));
        for (u64 c : C.elements()) {
            if (variant == Variant::Multiplicative)
                out.insert({fab, f.mul(c, s.inv_ga[i]), f.mul(c, s.ha[i])});
            else
                out.insert({fab, s.inv_ga[i], f.sub(c, s.ha[i])});
        }
    }
}

LambdaCounts counts_from_points(Variant variant, const TripleSet& points, const FSet& B,
                                const FSet& C, const PrimeField& f) {
    std::map<u64, u64> by_lambda;
    for (const Triple& t : points) {
        u64 lam = variant == Variant::Multiplicative ? f.sub(f.mul(t.x, t.y), t.z)
                                                     : f.add(f.mul(t.x, t.y), t.z);
        ++by_lambda[lam];
    }
    LambdaCounts lc{variant, {}, compose_support(variant, B, C), false};
    lc.counts.assign(by_lambda.begin(), by_lambda.end());

    lc.support_matches = lc.counts.size() == lc.support_set.size();
    if (lc.support_matches) {
        for (std::size_t i = 0; i < lc.counts.size(); ++i) {
            if (lc.counts[i].first != lc.support_set.elements()[i]) {
                lc.support_matches = false;
                break;
            }
        }
    }
    return lc;
}

}  // namespace

FSet compose_support(Variant variant, const FSet& B, const FSet& C) {
    return variant == Variant::Multiplicative ? productset(B, C) : sumset(B, C);
}

LambdaCounts lambda_counts(Variant variant, const FSet& A, const FSet& B, const FSet& C,
                           const ExpanderSpec& spec) {
    validate_inputs(A, B, C, spec);
    const PrimeField f = spec.field();
    const ASlices s = resolve(A, spec);
    const auto n = static_cast<std::ptrdiff_t>(A.size());

    TripleSet points;
#pragma omp parallel
    {
        TripleSet local;
#pragma omp for schedule(dynamic) nowait
        for (std::ptrdiff_t i = 0; i < n; ++i)
            emit_slice(variant, static_cast<std::size_t>(i), s, B, C, f, local);
#pragma omp critical(lambda_counts_merge)
        points.merge(local);
    }
    return counts_from_points(variant, points, B, C, f);
}

LambdaCounts lambda_counts_serial(Variant variant, const FSet& A, const FSet& B, const FSet& C,
                                  const ExpanderSpec& spec) {
    validate_inputs(A, B, C, spec);
    const PrimeField f = spec.field();
    const ASlices s = resolve(A, spec);
    TripleSet points;
    for (std::size_t i = 0; i < A.size(); ++i) emit_slice(variant, i, s, B, C, f, points);
    return counts_from_points(variant, points, B, C, f);
}

EnergyReport energy_report(const LambdaCounts& lc, const FSet& A, const FSet& B, const FSet& C,
                           u64 m) {
    if (m == 0) throw std::invalid_argument("m must be positive");
    EnergyReport r;
    for (const auto& [lambda, count] : lc.counts) {
        r.sum_E = checked_add(r.sum_E, count);
        r.energy = checked_add(r.energy, checked_mul(count, count));
    }
    r.lower_bound_num =
        checked_mul(checked_mul(static_cast<u128>(A.size()), B.size()), C.size());
    r.lower_bound_den = m;
    r.cs_lhs = checked_mul(r.sum_E, r.sum_E);
    r.cs_rhs = checked_mul(r.energy, lc.support_set.size());
    r.counting_ok = checked_mul(r.sum_E, m) >= r.lower_bound_num;
    r.cs_ok = r.cs_lhs <= r.cs_rhs;
    r.support_ok = lc.support_matches;
    return r;
}

bool verify_lambda_identity(Variant variant, const FSet& A, const FSet& B, const FSet& C,
                            const ExpanderSpec& spec) {
    validate_inputs(A, B, C, spec);
    const PrimeField f = spec.field();
    const ASlices s = resolve(A, spec);
    const auto n = static_cast<std::ptrdiff_t>(A.size());
    bool ok = true;
#pragma omp parallel for schedule(dynamic) reduction(&& : ok)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        for (u64 b : B.elements()) {
            const u64 fab = f.mul(s.ga[i], f.add(s.ha[i], b));
            for (u64 c : C.elements()) {
                u64 lhs, rhs;
                if (variant == Variant::Multiplicative) {
                    lhs = f.sub(f.mul(fab, f.mul(c, s.inv_ga[i])), f.mul(c, s.ha[i]));
                    rhs = f.mul(b, c);
                } else {
                    lhs = f.add(f.mul(fab, s.inv_ga[i]), f.sub(c, s.ha[i]));
                    rhs = f.add(b, c);
                }
                ok = ok && lhs == rhs;
            }
        }
    }
    return ok;
}

}  // namespace expander
