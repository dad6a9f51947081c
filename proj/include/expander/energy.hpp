#pragma once

#include <utility>
#include <vector>

#include "expander/functions.hpp"

namespace expander {

/// B*C (multiplicative) or B+C (additive).
FSet compose_support(Variant variant, const FSet& B, const FSet& C);

/// Per-level counts E_lambda. Each E_lambda is the number of DISTINCT value
/// triples produced over A x B x C whose level expression equals lambda —
/// points, not (a,b,c) solutions. The triple determines its level, so the
/// counts partition the global deduplicated point set.
struct LambdaCounts {
    Variant variant;
    std::vector<std::pair<u64, u64>> counts;  // (lambda, E_lambda), ascending lambda
    FSet support_set;                         // B*C or B+C
    bool support_matches;                     // count keys == support elements, verified
};

/// Production kernel: enumeration partitioned over a in A (OpenMP), merged
/// as a set union, so the result is independent of the partitioning.
LambdaCounts lambda_counts(Variant variant, const FSet& A, const FSet& B, const FSet& C,
                           const ExpanderSpec& spec);

/// Single-loop reference implementation kept for testing.
LambdaCounts lambda_counts_serial(Variant variant, const FSet& A, const FSet& B, const FSet& C,
                                  const ExpanderSpec& spec);

/// First and second moments of the level counts plus the two exact proof
/// steps: the counting lower bound |A||B||C|/m <= sum E_lambda (compared by
/// cross-multiplication) and Cauchy-Schwarz (sum E_lambda)^2 <= E * |support|.
/// Violations are reported as flags, never silently dropped.
struct EnergyReport {
    u128 sum_E = 0;
    u128 energy = 0;             // E = sum of E_lambda^2
    u128 lower_bound_num = 0;    // |A||B||C|
    u64 lower_bound_den = 1;     // m
    u128 cs_lhs = 0;             // (sum E_lambda)^2
    u128 cs_rhs = 0;             // E * |support|
    bool counting_ok = false;    // sum_E * m >= |A||B||C|
    bool cs_ok = false;          // cs_lhs <= cs_rhs
    bool support_ok = false;     // copied from LambdaCounts::support_matches
};

/// m must be mu(g*h) for the multiplicative variant or mu(g) for the
/// additive one; the caller selects because the two statements disagree.
EnergyReport energy_report(const LambdaCounts& lc, const FSet& A, const FSet& B, const FSet& C,
                           u64 m);

/// Exhaustive check of the collapse identity over all of A x B x C:
/// multiplicative  f(a,b) * (c/g(a)) - c*h(a) = b*c,
/// additive        f(a,b) / g(a) + (c - h(a)) = b + c.
/// True on every triple for a correct field implementation.
bool verify_lambda_identity(Variant variant, const FSet& A, const FSet& B, const FSet& C,
                            const ExpanderSpec& spec);

}  // namespace expander
