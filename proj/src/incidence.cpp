#include "expander/incidence.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace expander {

namespace {

u64 mix64(u64 v) {
    v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ull;
    v = (v ^ (v >> 27)) * 0x94d049bb133111ebull;
    return v ^ (v >> 31);
}

// Direction scaled so its first nonzero entry is 1, base point reduced along
// the direction so its pivot coordinate is 0: one key per line.
struct LineKey {
    u64 dx, dy, dz, bx, by, bz;
    bool operator==(const LineKey&) const = default;
};

struct LineKeyHash {
    std::size_t operator()(const LineKey& k) const {
        u64 h = mix64(k.dx);
        h = mix64(h ^ (k.dy + 0x9e3779b97f4a7c15ull));
        h = mix64(h ^ (k.dz + 0x9e3779b97f4a7c15ull));
        h = mix64(h ^ (k.bx + 0x9e3779b97f4a7c15ull));
        h = mix64(h ^ (k.by + 0x9e3779b97f4a7c15ull));
        h = mix64(h ^ (k.bz + 0x9e3779b97f4a7c15ull));
        return h;
    }
};

using LinePairCounts = std::unordered_map<LineKey, u64, LineKeyHash>;

LineKey line_through(const PrimeField& f, const Point3& P, const Point3& Q) {
    u64 dx = f.sub(Q.x, P.x), dy = f.sub(Q.y, P.y), dz = f.sub(Q.z, P.z);
    u64 t;
    if (dx != 0) {
        u64 s = f.inv(dx);
        dy = f.mul(dy, s), dz = f.mul(dz, s), dx = 1;
        t = P.x;
    } else if (dy != 0) {
        u64 s = f.inv(dy);
        dz = f.mul(dz, s), dy = 1;
        t = P.y;
    } else {
        dz = 1;
        t = P.z;
    }
    return LineKey{dx, dy, dz,
                   f.sub(P.x, f.mul(t, dx)), f.sub(P.y, f.mul(t, dy)), f.sub(P.z, f.mul(t, dz))};
}

u64 k_from_pair_counts(const LinePairCounts& lines) {
    u64 best_pairs = 0;
    for (const auto& [key, pairs] : lines) best_pairs = std::max(best_pairs, pairs);
    // t points on a line contribute t(t-1)/2 pairs
    u64 t = (1 + isqrt_u128(1 + 8 * static_cast<u128>(best_pairs))) / 2;
    return t;
}

void validate_rs_inputs(const FSet& A, const FSet& B, const FSet& C, const ExpanderSpec& spec) {
    const u64 p = spec.field().modulus();
    if (A.modulus() != p || B.modulus() != p || C.modulus() != p)
        throw std::invalid_argument("modulus mismatch");
    if (A.empty() || B.empty() || C.empty())
        throw std::invalid_argument("incidence construction needs nonempty sets");
}

// Points of R grouped by their (x,y) prefix, z values sorted per group.
struct GroupedPoints {
    std::vector<std::pair<u64, u64>> prefix;  // (x, y) per group
    std::vector<std::pair<std::size_t, std::size_t>> range;  // [begin, end) into zs
    std::vector<u64> zs;
};

GroupedPoints group_by_prefix(std::span<const Point3> R) {
    std::vector<Point3> sorted(R.begin(), R.end());
    std::sort(sorted.begin(), sorted.end());
    GroupedPoints g;
    g.zs.reserve(sorted.size());
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j].x == sorted[i].x && sorted[j].y == sorted[i].y) ++j;
        g.prefix.emplace_back(sorted[i].x, sorted[i].y);
        g.range.emplace_back(g.zs.size(), g.zs.size() + (j - i));
        for (std::size_t k = i; k < j; ++k) g.zs.push_back(sorted[k].z);
        i = j;
    }
    return g;
}

}  // namespace

Plane3 canonical_plane(const PrimeField& f, u64 n1, u64 n2, u64 n3, u64 d) {
    if (n1 == 0 && n2 == 0 && n3 == 0)
        throw std::invalid_argument("plane needs a nonzero normal");
    u64 pivot = n1 != 0 ? n1 : (n2 != 0 ? n2 : n3);
    u64 s = f.inv(pivot);
    return Plane3{f.mul(n1, s), f.mul(n2, s), f.mul(n3, s), f.mul(d, s)};
}

bool point_on_plane(const PrimeField& f, const Point3& r, const Plane3& s) {
    u64 lhs = f.add(f.add(f.mul(s.n1, r.x), f.mul(s.n2, r.y)), f.mul(s.n3, r.z));
    return lhs == s.d;
}

std::vector<std::pair<u64, u64>> build_T(Variant variant, const FSet& A, const FSet& C,
                                         const ExpanderSpec& spec) {
    const PrimeField& f = spec.field();
    std::vector<std::pair<u64, u64>> pairs;
    pairs.reserve(A.size() * C.size());
    for (u64 a : A.elements()) {
        const u64 ga = spec.g.value_at(a);
        const u64 inv_ga = f.inv(ga);
        const u64 ha = spec.h.value_at(a);
        for (u64 c : C.elements()) {
            if (variant == Variant::Multiplicative)
                pairs.emplace_back(f.mul(c, inv_ga), f.mul(c, ha));
            else
                pairs.emplace_back(inv_ga, f.sub(c, ha));
        }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

std::vector<Point3> build_R(Variant variant, const FSet& A, const FSet& B, const FSet& C,
                            const ExpanderSpec& spec) {
    validate_rs_inputs(A, B, C, spec);
    const auto T = build_T(variant, A, C, spec);
    const FSet F = image_f(spec, A, B);
    std::vector<Point3> R;
    R.reserve(T.size() * F.size());
    for (const auto& [u, v] : T)
        for (u64 z : F.elements()) R.push_back({u, v, z});
    return R;  // sorted because T and F are
}

std::vector<Plane3> build_S(Variant variant, const FSet& A, const FSet& B, const FSet& C,
                            const ExpanderSpec& spec) {
    validate_rs_inputs(A, B, C, spec);
    const PrimeField& f = spec.field();
    const auto T = build_T(variant, A, C, spec);
    const FSet F = image_f(spec, A, B);
    // The (Z, constant) parameters run over the same pairs as T:
    // multiplicative  f(a,b) X - Y - (c'/g(a')) Z = -c' h(a'),
    // additive        f(a,b) X + Y - (1/g(a')) Z =  c' - h(a').
    std::vector<Plane3> S;
    S.reserve(T.size() * F.size());
    for (u64 fab : F.elements()) {
        for (const auto& [u, v] : T) {
            if (variant == Variant::Multiplicative)
                S.push_back(canonical_plane(f, fab, f.neg(1), f.neg(u), f.neg(v)));
            else
                S.push_back(canonical_plane(f, fab, 1, f.neg(u), v));
        }
    }
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());
    return S;
}

u64 count_incidences(const PrimeField& f, std::span<const Point3> R, std::span<const Plane3> S) {
    if (R.empty() || S.empty()) return 0;
    const GroupedPoints g = group_by_prefix(R);
    const auto n_planes = static_cast<std::ptrdiff_t>(S.size());
    const auto n_groups = g.prefix.size();
    u64 total = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : total)
    for (std::ptrdiff_t si = 0; si < n_planes; ++si) {
        const Plane3& s = S[static_cast<std::size_t>(si)];
        const u64 inv_n3 = s.n3 != 0 ? f.inv(s.n3) : 0;
        u64 local = 0;
        for (std::size_t gi = 0; gi < n_groups; ++gi) {
            const auto [x, y] = g.prefix[gi];
            const u64 rest = f.sub(s.d, f.add(f.mul(s.n1, x), f.mul(s.n2, y)));
            const auto [lo, hi] = g.range[gi];
            if (s.n3 == 0) {
                if (rest == 0) local += hi - lo;
            } else {
                const u64 z = f.mul(rest, inv_n3);
                if (std::binary_search(g.zs.begin() + static_cast<std::ptrdiff_t>(lo),
                                       g.zs.begin() + static_cast<std::ptrdiff_t>(hi), z))
                    ++local;
            }
        }
        total += local;
    }
    return total;
}

u64 count_incidences_naive(const PrimeField& f, std::span<const Point3> R,
                           std::span<const Plane3> S) {
    u64 total = 0;
    for (const Point3& r : R)
        for (const Plane3& s : S) total += point_on_plane(f, r, s) ? 1 : 0;
    return total;
}

u64 max_collinear(const PrimeField& f, std::span<const Point3> R) {
    if (R.empty()) throw std::invalid_argument("collinearity of an empty point set");
    if (R.size() == 1) return 1;
    const auto n = static_cast<std::ptrdiff_t>(R.size());
    LinePairCounts lines;
#pragma omp parallel
    {
        LinePairCounts local;
#pragma omp for schedule(dynamic, 8) nowait
        for (std::ptrdiff_t i = 0; i < n; ++i)
            for (std::ptrdiff_t j = i + 1; j < n; ++j)
                ++local[line_through(f, R[static_cast<std::size_t>(i)],
                                     R[static_cast<std::size_t>(j)])];
#pragma omp critical(max_collinear_merge)
        for (const auto& [key, cnt] : local) lines[key] += cnt;
    }
    return k_from_pair_counts(lines);
}

u64 max_collinear_serial(const PrimeField& f, std::span<const Point3> R) {
    if (R.empty()) throw std::invalid_argument("collinearity of an empty point set");
    if (R.size() == 1) return 1;
    LinePairCounts lines;
    for (std::size_t i = 0; i < R.size(); ++i)
        for (std::size_t j = i + 1; j < R.size(); ++j) ++lines[line_through(f, R[i], R[j])];
    return k_from_pair_counts(lines);
}

u64 k_paper_bound(u64 size_A, u64 size_C, u64 size_fAB) {
    return std::max(size_A, std::max(size_C, size_fAB));
}

double rudnev_rhs(u64 size_R, u64 size_S, u64 k) {
    return std::sqrt(static_cast<double>(size_R)) * static_cast<double>(size_S) +
           static_cast<double>(k) * static_cast<double>(size_S);
}

bool p2_gate(u64 size_R, const PrimeField& field) {
    const u128 p = field.modulus();
    return static_cast<u128>(size_R) <= p * p;
}

IncidenceReport incidence_report(Variant variant, const FSet& A, const FSet& B, const FSet& C,
                                 const ExpanderSpec& spec, u128 energy_E,
                                 const IncidenceCaps& caps) {
    const PrimeField& f = spec.field();
    const auto T = build_T(variant, A, C, spec);
    const FSet F = image_f(spec, A, B);
    const auto R = build_R(variant, A, B, C, spec);
    const auto S = build_S(variant, A, B, C, spec);

    IncidenceReport rep;
    rep.size_R = R.size();
    rep.size_S = S.size();
    rep.size_T = T.size();
    rep.size_F = F.size();
    rep.rs_sizes_equal = R.size() == S.size();
    rep.product_structure_ok = R.size() == T.size() * F.size();
    rep.k_paper = k_paper_bound(A.size(), C.size(), F.size());
    rep.p2_gate_ok = p2_gate(R.size(), f);

    const u128 pairs = static_cast<u128>(R.size()) * (R.size() - 1) / 2;
    if (pairs <= caps.collinear_pair_budget) {
        rep.k_exact = static_cast<i64>(max_collinear(f, R));
        rep.k_bound_ok = static_cast<u64>(rep.k_exact) <= rep.k_paper;
    }

    const u128 fast_work = static_cast<u128>(S.size()) * T.size();
    if (fast_work <= caps.fast_work_budget) {
        const u64 I = count_incidences(f, R, S);
        rep.incidences = static_cast<i64>(I);
        rep.E_le_I = energy_E <= static_cast<u128>(I);
        const u64 k = rep.k_exact >= 0 ? static_cast<u64>(rep.k_exact) : rep.k_paper;
        rep.rudnev_rhs_value = rudnev_rhs(rep.size_R, rep.size_S, k);
        rep.rudnev_ratio = static_cast<double>(I) / rep.rudnev_rhs_value;
        if (static_cast<u128>(R.size()) * S.size() <= caps.oracle_budget) {
            rep.oracle_checked = true;
            rep.oracle_match = count_incidences_naive(f, R, S) == I;
        }
    } else {
        const u64 k = rep.k_exact >= 0 ? static_cast<u64>(rep.k_exact) : rep.k_paper;
        rep.rudnev_rhs_value = rudnev_rhs(rep.size_R, rep.size_S, k);
    }
    return rep;
}

}  // namespace expander
