#pragma once

#include <span>
#include <vector>

#include "expander/energy.hpp"

namespace expander {

struct Point3 {
    u64 x, y, z;
    auto operator<=>(const Point3&) const = default;
};

/// Plane n1*X + n2*Y + n3*Z = d, stored in canonical form: the first nonzero
/// coefficient equals 1, so structural equality deduplicates correctly.
struct Plane3 {
    u64 n1, n2, n3, d;
    auto operator<=>(const Plane3&) const = default;
};

Plane3 canonical_plane(const PrimeField& f, u64 n1, u64 n2, u64 n3, u64 d);

bool point_on_plane(const PrimeField& f, const Point3& r, const Plane3& s);

/// First-two-coordinate projection T of the point set R:
/// multiplicative {(c/g(a), c*h(a))}, additive {(1/g(a), c-h(a))}.
std::vector<std::pair<u64, u64>> build_T(Variant variant, const FSet& A, const FSet& C,
                                         const ExpanderSpec& spec);

/// R = T x f(A,B), deduplicated and sorted.
std::vector<Point3> build_R(Variant variant, const FSet& A, const FSet& B, const FSet& C,
                            const ExpanderSpec& spec);

/// The matching plane family; |S| = |R| on every input by construction.
std::vector<Plane3> build_S(Variant variant, const FSet& A, const FSet& B, const FSet& C,
                            const ExpanderSpec& spec);

/// Exact I(R,S). Groups points by their (x,y) prefix so each plane is solved
/// once per group for the unique incident z; parallel over planes.
/// Accepts arbitrary point/plane sets.
u64 count_incidences(const PrimeField& f, std::span<const Point3> R, std::span<const Plane3> S);

/// The reference oracle: a plain serial double loop over R x S.
u64 count_incidences_naive(const PrimeField& f, std::span<const Point3> R,
                           std::span<const Plane3> S);

/// Exact maximum number of points of R on one line in F_p^3. Every unordered
/// pair is hashed under its canonical line key; a line carrying t points
/// yields t(t-1)/2 pairs, and t is recovered from the pair count. O(|R|^2).
u64 max_collinear(const PrimeField& f, std::span<const Point3> R);

/// Serial reference implementation kept for testing.
u64 max_collinear_serial(const PrimeField& f, std::span<const Point3> R);

/// max{|A|, |C|, |f(A,B)|}, the collinearity bound the constructions obey.
u64 k_paper_bound(u64 size_A, u64 size_C, u64 size_fAB);

/// |R|^{1/2} |S| + k |S|. The one real-valued quantity in the pipeline;
/// reported, never asserted exactly.
double rudnev_rhs(u64 size_R, u64 size_S, u64 k);

/// True iff |R| <= p^2 (exact), i.e. the incidence-bound branch applies;
/// false selects the large-image branch.
bool p2_gate(u64 size_R, const PrimeField& field);

struct IncidenceCaps {
    u64 collinear_pair_budget = 200'000;    // max |R|(|R|-1)/2 for exact k
    u64 oracle_budget = 10'000'000;         // max |R|*|S| for the naive cross-check
    u64 fast_work_budget = 100'000'000;     // max |S|*|T| for the grouped counter
};

struct IncidenceReport {
    u64 size_R = 0, size_S = 0, size_T = 0, size_F = 0;
    i64 incidences = -1;       // -1 when over fast_work_budget
    i64 k_exact = -1;          // -1 when over collinear_pair_budget
    u64 k_paper = 0;
    double rudnev_rhs_value = 0;  // uses k_exact when available, else k_paper
    double rudnev_ratio = -1;     // I / rhs, -1 when I was not computed
    bool p2_gate_ok = false;
    bool E_le_I = false;          // meaningful when incidences >= 0
    bool rs_sizes_equal = false;
    bool product_structure_ok = false;  // |R| == |T| * |F|
    bool k_bound_ok = true;             // k_exact <= k_paper; true when capped
    bool oracle_checked = false;        // naive cross-check ran
    bool oracle_match = true;
};

/// Builds R and S, counts incidences and collinearity subject to the caps,
/// and checks the report invariants. `energy_E` is the second moment from
/// the energy module on the same instance (the E <= I injection).
IncidenceReport incidence_report(Variant variant, const FSet& A, const FSet& B, const FSet& C,
                                 const ExpanderSpec& spec, u128 energy_E,
                                 const IncidenceCaps& caps = {});

}  // namespace expander
