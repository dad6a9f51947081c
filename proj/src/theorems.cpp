#include "expander/theorems.hpp"

#include <algorithm>
#include <cmath>

namespace expander {

std::array<double, 2> hh_bound_terms(u64 size_A, u64 size_B, u64 size_C, u64 m, u64 p) {
    if (m == 0) throw std::invalid_argument("m must be positive");
    const u128 num1 = checked_mul(checked_mul(static_cast<u128>(size_A), size_B),
                                  checked_mul(static_cast<u128>(size_B), size_C));
    const u128 den1 = checked_mul(static_cast<u128>(p), checked_mul(static_cast<u128>(m), m));
    const u128 num2 = checked_mul(static_cast<u128>(p), size_B);
    return {static_cast<double>(num1) / static_cast<double>(den1),
            static_cast<double>(num2) / static_cast<double>(m)};
}

double hh_bound(u64 size_A, u64 size_B, u64 size_C, u64 m, u64 p) {
    // pick the smaller term by exact cross-multiplication, then render
    const u128 num1 = checked_mul(checked_mul(static_cast<u128>(size_A), size_B),
                                  checked_mul(static_cast<u128>(size_B), size_C));
    const u128 den1 = checked_mul(static_cast<u128>(p), checked_mul(static_cast<u128>(m), m));
    const u128 num2 = checked_mul(static_cast<u128>(p), size_B);
    const u128 den2 = m;
    const bool first_smaller = product_leq(num1, den2, num2, den1);
    return first_smaller ? static_cast<double>(num1) / static_cast<double>(den1)
                         : static_cast<double>(num2) / static_cast<double>(den2);
}

std::array<double, 4> new_bound_terms(u64 size_A, u64 size_B, u64 size_C, u64 m) {
    if (m == 0) throw std::invalid_argument("m must be positive");
    const u128 a = size_A, b = size_B, c = size_C, mm = m;
    const u128 b4 = checked_mul(checked_mul(b, b), checked_mul(b, b));
    const double t1 = real_root(checked_mul(checked_mul(a, b4), c), 5) /
                      real_root(checked_mul(checked_mul(mm, mm), checked_mul(mm, mm)), 5);
    const double t2 = static_cast<double>(b) * real_root(c, 2) / static_cast<double>(m);
    const double t3 = static_cast<double>(b) * real_root(a, 2) / static_cast<double>(m);
    const double t4 = real_root(checked_mul(checked_mul(b, b), checked_mul(c, a)), 3) /
                      real_root(checked_mul(mm, mm), 3);
    return {t1, t2, t3, t4};
}

double new_bound(u64 size_A, u64 size_B, u64 size_C, u64 m) {
    const auto t = new_bound_terms(size_A, size_B, size_C, m);
    return *std::min_element(t.begin(), t.end());
}

bool VerificationRecord::chain_ok() const {
    if (!energy.counting_ok || !energy.cs_ok || !energy.support_ok) return false;
    if (!incidence.rs_sizes_equal || !incidence.product_structure_ok) return false;
    if (incidence.incidences >= 0 && !incidence.E_le_I) return false;
    if (incidence.k_exact >= 0 && !incidence.k_bound_ok) return false;
    if (incidence.oracle_checked && !incidence.oracle_match) return false;
    return true;
}

VerificationRecord verify_theorem(Variant variant, const FSet& A, const FSet& B, const FSet& C,
                                  const ExpanderSpec& spec, const PrimeField& field,
                                  const IncidenceCaps& caps) {
    if (!(field == spec.field())) throw std::invalid_argument("field does not match spec");

    VerificationRecord rec;
    rec.variant = variant;
    rec.gates.p58_ok = hypothesis_gate({&A, &B, &C}, field);
    rec.gates.star_ok = A.is_star() && B.is_star() && C.is_star();

    rec.m = variant == Variant::Multiplicative ? mu(pointwise_product(spec.g, spec.h))
                                               : mu(spec.g);

    const LambdaCounts lc = lambda_counts(variant, A, B, C, spec);
    rec.energy = energy_report(lc, A, B, C, rec.m);
    rec.incidence = incidence_report(variant, A, B, C, spec, rec.energy.energy, caps);

    rec.size_f_AB = rec.incidence.size_F;
    rec.size_BC = lc.support_set.size();
    rec.measured_max = std::max(rec.size_f_AB, rec.size_BC);

    BoundReport& br = rec.bound_report;
    br.theorem_id = variant == Variant::Multiplicative ? "T1star" : "T2star";
    br.size_A = A.size();
    br.size_B = B.size();
    br.size_C = C.size();
    br.m = rec.m;
    const auto terms = new_bound_terms(A.size(), B.size(), C.size(), rec.m);
    br.terms.assign(terms.begin(), terms.end());
    br.bound = *std::min_element(br.terms.begin(), br.terms.end());
    br.measured_lhs = rec.measured_max;
    br.ratio = static_cast<double>(rec.measured_max) / br.bound;

    rec.bound_hh = hh_bound(A.size(), B.size(), C.size(), rec.m, field.modulus());
    return rec;
}

GrowthReport growth_report_from_sizes(u64 size_A, u64 size_sum, u64 size_prod, u64 size_f,
                                      double eps, u64 p) {
    if (size_A <= 1) throw std::domain_error("growth exponent undefined for |A| <= 1");
    if (!(eps > 0.0) || !(eps < 9.0 / 8.0))
        throw std::invalid_argument("eps must lie in (0, 9/8)");

    GrowthReport r;
    r.size_A = size_A;
    r.size_sum = size_sum;
    r.size_prod = size_prod;
    r.size_f = size_f;
    r.eps_input = eps;
    r.p58_ok = below_p58(size_A, p);
    r.trivially_large =
        static_cast<u128>(size_f) > static_cast<u128>(size_A) * size_A;

    const double logA = std::log(static_cast<double>(size_A));
    const u64 size_min = std::min(size_sum, size_prod);
    r.hypothesis_holds = static_cast<double>(size_min) <=
                         std::pow(static_cast<double>(size_A), 9.0 / 8.0 - eps);
    r.eps_realized = 9.0 / 8.0 - std::log(static_cast<double>(size_min)) / logA;
    r.predicted_exponent_input = 5.0 / 4.0 + 2.0 * eps / 3.0;
    r.predicted_exponent_realized = 5.0 / 4.0 + 2.0 * r.eps_realized / 3.0;
    if (r.trivially_large) return r;  // short-circuit: the conclusion is immediate

    r.realized_exponent = std::log(static_cast<double>(size_f)) / logA;
    const double f32 = std::pow(static_cast<double>(size_f), 1.5);
    const double a3 = std::pow(static_cast<double>(size_A), 3.0);
    r.ratio_prod = f32 * static_cast<double>(size_prod) / a3;
    r.ratio_sum = f32 * static_cast<double>(size_sum) / a3;
    return r;
}

GrowthReport conditional_growth_check(const FSet& A, const ExpanderSpec& spec, double eps,
                                      const PrimeField& field) {
    if (A.modulus() != field.modulus()) throw std::invalid_argument("modulus mismatch");
    const u64 size_sum = sumset(A, A).size();
    const u64 size_prod = productset(A, A).size();
    const u64 size_f = image_f(spec, A, A).size();
    return growth_report_from_sizes(A.size(), size_sum, size_prod, size_f, eps,
                                    field.modulus());
}

BoundComparison compare_bounds(u64 size_A, u64 size_B, u64 size_C, u64 m, u64 p) {
    BoundComparison c;
    c.size_A = size_A;
    c.size_B = size_B;
    c.size_C = size_C;
    c.m = m;
    c.p = p;
    c.hh_product_bound = hh_bound(size_A, size_B, size_C, m, p);
    c.new_max_bound = new_bound(size_A, size_B, size_C, m);
    c.hh_value_larger = c.hh_product_bound > c.new_max_bound;
    c.p58_edge = !(below_p58(size_A, p) && below_p58(size_B, p) && below_p58(size_C, p));
    return c;
}

}  // namespace expander
