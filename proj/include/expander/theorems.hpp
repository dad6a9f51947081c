#pragma once

#include <array>
#include <string>
#include <vector>

#include "expander/incidence.hpp"

namespace expander {

// Bound evaluators. Reported values are floating point; every chain
// assertion elsewhere stays in exact integer arithmetic. Roots of integer
// radicands go through real_root(), so perfect powers come out exact.

/// min{ |A||B|^2|C| / (p m^2),  p|B| / m }, evaluated as exact rationals and
/// rendered as a double. The same formula serves both baseline statements
/// (they differ only in which mu defines m).
double hh_bound(u64 size_A, u64 size_B, u64 size_C, u64 m, u64 p);
std::array<double, 2> hh_bound_terms(u64 size_A, u64 size_B, u64 size_C, u64 m, u64 p);

/// min of the four-term lower bound for max{|f(A,B)|, |B∘C|}:
///   |A|^{1/5}|B|^{4/5}|C|^{1/5} / m^{4/5},   |B||C|^{1/2} / m,
///   |B||A|^{1/2} / m,                        |B|^{2/3}|C|^{1/3}|A|^{1/3} / m^{2/3}.
double new_bound(u64 size_A, u64 size_B, u64 size_C, u64 m);
std::array<double, 4> new_bound_terms(u64 size_A, u64 size_B, u64 size_C, u64 m);

struct BoundReport {
    std::string theorem_id;  // HH1, HH2, T1star, T2star
    u64 size_A = 0, size_B = 0, size_C = 0, m = 1, p = 0;  // p unused for T*
    std::vector<double> terms;
    double bound = 0;
    u64 measured_lhs = 0;  // max{|f(A,B)|, |B∘C|} (product for HH is reported by the caller)
    double ratio = 0;      // measured / bound
};

struct HypothesisGates {
    bool p58_ok = false;   // |A|,|B|,|C| <= p^{5/8}, exact integer comparison
    bool star_ok = false;  // 0 not in A, B or C
};

/// One fully verified instance: the exact proof chain (counting bound,
/// Cauchy-Schwarz, E <= I, collinearity bound, structural identities) plus
/// the measured quantities against the constant-free bound expressions.
struct VerificationRecord {
    Variant variant = Variant::Multiplicative;
    u64 m = 1;
    HypothesisGates gates;
    EnergyReport energy;
    IncidenceReport incidence;
    u64 size_f_AB = 0, size_BC = 0;
    u64 measured_max = 0;
    BoundReport bound_report;   // T1star / T2star
    double bound_hh = 0;        // matching baseline, same m
    bool chain_ok() const;
};

/// Runs the full chain on one instance. Gate violations are flagged, not
/// fatal; a domain violation (A outside the tables' domain) throws.
VerificationRecord verify_theorem(Variant variant, const FSet& A, const FSet& B, const FSet& C,
                                  const ExpanderSpec& spec, const PrimeField& field,
                                  const IncidenceCaps& caps = {});

/// Bookkeeping for the conditional growth statement on A = B = C.
struct GrowthReport {
    u64 size_A = 0, size_sum = 0, size_prod = 0, size_f = 0;
    double eps_input = 0;
    bool hypothesis_holds = false;  // min{|A+A|,|A.A|} <= |A|^{9/8 - eps_input}
    bool p58_ok = false;
    bool trivially_large = false;   // |f(A,A)| > |A|^2: nothing left to show
    double eps_realized = 0;        // 9/8 - log(min)/log|A|
    double predicted_exponent_input = 0;     // 5/4 + 2 eps_input / 3
    double predicted_exponent_realized = 0;  // 5/4 + 2 eps_realized / 3
    double realized_exponent = 0;   // log|f(A,A)| / log|A|
    double ratio_prod = 0;          // |f(A,A)|^{3/2} |A.A| / |A|^3
    double ratio_sum = 0;           // |f(A,A)|^{3/2} |A+A| / |A|^3
};

/// Pure assembly from measured sizes; exposed so the guard and exponent
/// arithmetic are testable in isolation.
GrowthReport growth_report_from_sizes(u64 size_A, u64 size_sum, u64 size_prod, u64 size_f,
                                      double eps, u64 p);

GrowthReport conditional_growth_check(const FSet& A, const ExpanderSpec& spec, double eps,
                                      const PrimeField& field);

/// Side-by-side bound table. The two shapes are not directly comparable —
/// the baseline bounds the product |f(A,B)||B∘C|, the four-term bound the
/// max — so both raw minima are reported and flagged, never converted.
struct BoundComparison {
    u64 size_A = 0, size_B = 0, size_C = 0, m = 1, p = 0;
    double hh_product_bound = 0;
    double new_max_bound = 0;
    bool hh_value_larger = false;
    bool p58_edge = false;  // some size fails |X|^8 <= p^5
};

BoundComparison compare_bounds(u64 size_A, u64 size_B, u64 size_C, u64 m, u64 p);

}  // namespace expander
