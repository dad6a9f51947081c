#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "expander/incidence.hpp"
#include "expander/prng.hpp"

using namespace expander;

namespace {

ExpanderSpec identity_spec(const PrimeField& f) {
    FSet dom = fstar(f);
    return ExpanderSpec(FunctionTable::identity(dom), FunctionTable::identity(dom));
}

FSet random_star_set(const PrimeField& f, u64 n, u64 seed) {
    std::mt19937_64 rng(seed);
    return FSet(f, sample_without_replacement(1, f.modulus() - 1, n, rng));
}

std::vector<Point3> random_points(const PrimeField& f, std::size_t n, u64 seed) {
    std::mt19937_64 rng(seed);
    std::vector<Point3> pts;
    while (pts.size() < n)
        pts.push_back({bounded_u64(rng, f.modulus()), bounded_u64(rng, f.modulus()),
                       bounded_u64(rng, f.modulus())});
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

std::vector<Plane3> random_planes(const PrimeField& f, std::size_t n, u64 seed) {
    std::mt19937_64 rng(seed + 7777);
    std::vector<Plane3> planes;
    while (planes.size() < n) {
        u64 n1 = bounded_u64(rng, f.modulus()), n2 = bounded_u64(rng, f.modulus());
        u64 n3 = bounded_u64(rng, f.modulus()), d = bounded_u64(rng, f.modulus());
        if (n1 == 0 && n2 == 0 && n3 == 0) continue;
        planes.push_back(canonical_plane(f, n1, n2, n3, d));
    }
    std::sort(planes.begin(), planes.end());
    planes.erase(std::unique(planes.begin(), planes.end()), planes.end());
    return planes;
}

}  // namespace

TEST_CASE("canonical p=5 instance") {
    PrimeField f(5);
    ExpanderSpec spec = identity_spec(f);
    FSet A(f, {1}), B(f, {1, 2}), C(f, {1});

    auto T = build_T(Variant::Multiplicative, A, C, spec);
    CHECK(T == std::vector<std::pair<u64, u64>>{{1, 1}});

    auto R = build_R(Variant::Multiplicative, A, B, C, spec);
    CHECK(R == std::vector<Point3>{{1, 1, 2}, {1, 1, 3}});

    auto S = build_S(Variant::Multiplicative, A, B, C, spec);
    REQUIRE(S.size() == 2);
    // planes 2X - Y - Z = -1 and 3X - Y - Z = -1, canonicalized
    CHECK(S[0] == Plane3{1, 2, 2, 2});
    CHECK(S[1] == Plane3{1, 3, 3, 3});

    CHECK(count_incidences(f, R, S) == 2);
    CHECK(count_incidences_naive(f, R, S) == 2);
    CHECK(max_collinear(f, R) == 2);  // both points on the vertical line X=1, Y=1
    CHECK(k_paper_bound(A.size(), C.size(), 2) == 2);
    CHECK(rudnev_rhs(2, 2, 2) == doctest::Approx(6.8284271247).epsilon(1e-9));

    IncidenceReport rep =
        incidence_report(Variant::Multiplicative, A, B, C, spec, /*energy_E=*/2);
    CHECK(rep.size_R == 2);
    CHECK(rep.size_S == 2);
    CHECK(rep.size_T == 1);
    CHECK(rep.size_F == 2);
    CHECK(rep.incidences == 2);
    CHECK(rep.k_exact == 2);
    CHECK(rep.k_paper == 2);
    CHECK(rep.E_le_I);
    CHECK(rep.rs_sizes_equal);
    CHECK(rep.product_structure_ok);
    CHECK(rep.k_bound_ok);
    CHECK(rep.p2_gate_ok);
    CHECK(rep.oracle_checked);
    CHECK(rep.oracle_match);
}

TEST_CASE("additive variant of the canonical instance") {
    PrimeField f(5);
    ExpanderSpec spec = identity_spec(f);
    FSet A(f, {1}), B(f, {1, 2}), C(f, {1});
    auto R = build_R(Variant::Additive, A, B, C, spec);
    auto S = build_S(Variant::Additive, A, B, C, spec);
    CHECK(R.size() == 2);
    CHECK(S.size() == 2);
    CHECK(count_incidences_naive(f, R, S) == 2);
    CHECK(max_collinear(f, R) == 2);
}

TEST_CASE("singleton instance") {
    PrimeField f(11);
    ExpanderSpec spec = identity_spec(f);
    FSet one(f, {1});
    auto R = build_R(Variant::Multiplicative, one, one, one, spec);
    auto S = build_S(Variant::Multiplicative, one, one, one, spec);
    CHECK(R.size() == 1);
    CHECK(S.size() == 1);
    CHECK(max_collinear(f, R) == 1);
    u64 I = count_incidences_naive(f, R, S);
    CHECK((I == 0 || I == 1));
}

TEST_CASE("plane canonicalization and membership") {
    PrimeField f(7);
    Plane3 s = canonical_plane(f, 2, 4, 6, 3);
    CHECK(s.n1 == 1);  // scaled by inv(2) = 4
    CHECK(s == canonical_plane(f, 1, 2, 3, 5));
    CHECK_THROWS_AS(canonical_plane(f, 0, 0, 0, 1), std::invalid_argument);

    PrimeField f3(3);
    CHECK(point_on_plane(f3, {1, 1, 1}, canonical_plane(f3, 1, 1, 1, 0)));
    CHECK(count_incidences_naive(f3, std::vector<Point3>{{1, 1, 1}},
                                 std::vector<Plane3>{canonical_plane(f3, 1, 1, 1, 0)}) == 1);
    // plane Z = 0 through the origin
    PrimeField f5(5);
    CHECK(count_incidences_naive(f5, std::vector<Point3>{{0, 0, 0}},
                                 std::vector<Plane3>{canonical_plane(f5, 0, 0, 1, 0)}) == 1);
}

TEST_CASE("three points on the Z-axis are collinear") {
    PrimeField f(7);
    std::vector<Point3> R{{0, 0, 1}, {0, 0, 3}, {0, 0, 6}};
    CHECK(max_collinear(f, R) == 3);
    CHECK(max_collinear_serial(f, R) == 3);
    CHECK_THROWS_AS(max_collinear(f, std::vector<Point3>{}), std::invalid_argument);
}

TEST_CASE("collinearity on structured grids") {
    PrimeField f(13);
    // full plane z = 0 grid: 13 points per line, lines in many directions
    std::vector<Point3> grid;
    for (u64 x = 0; x < 13; ++x)
        for (u64 y = 0; y < 13; ++y) grid.push_back({x, y, 0});
    CHECK(max_collinear(f, grid) == 13);
    CHECK(max_collinear_serial(f, grid) == 13);
    // a skew line plus scattered points off it
    std::vector<Point3> diag;
    for (u64 t = 0; t < 9; ++t) diag.push_back({t, f.mul(2, t), f.add(t, 5)});
    diag.push_back({1, 0, 0});
    diag.push_back({0, 1, 7});
    CHECK(max_collinear(f, diag) == 9);
}

TEST_CASE("fast incidence counter equals the naive oracle on arbitrary inputs") {
    for (u64 seed = 0; seed < 10; ++seed) {
        PrimeField f(seed % 2 ? 31 : 101);
        auto R = random_points(f, 40 + seed, seed);
        auto S = random_planes(f, 35 + seed, seed);
        CHECK(count_incidences(f, R, S) == count_incidences_naive(f, R, S));
    }
    // planes with a zero Z-coefficient exercise the group-wide branch
    PrimeField f(11);
    std::vector<Point3> R;
    for (u64 z = 0; z < 11; ++z) R.push_back({3, 5, z});
    std::vector<Plane3> S{canonical_plane(f, 1, 1, 0, 8), canonical_plane(f, 1, 1, 0, 7),
                          canonical_plane(f, 0, 1, 0, 4), canonical_plane(f, 1, 0, 0, 3)};
    CHECK(count_incidences(f, R, S) == count_incidences_naive(f, R, S));
    CHECK(count_incidences(f, R, S) == 22);  // planes 1 and 4 contain the whole fiber
}

TEST_CASE("parallel collinearity matches the serial reference") {
    for (u64 seed = 20; seed < 26; ++seed) {
        PrimeField f(101);
        auto R = random_points(f, 60, seed);
        CHECK(max_collinear(f, R) == max_collinear_serial(f, R));
    }
}

TEST_CASE("structure identities on random constructed instances") {
    for (u64 seed = 0; seed < 8; ++seed) {
        PrimeField f(seed % 2 ? 101 : 1009);
        FSet dom = fstar(f);
        ExpanderSpec spec(FunctionTable::monomial(dom, seed % 2 ? 2 : 1),
                          FunctionTable::inverse(dom));
        FSet A = random_star_set(f, 3 + seed % 5, seed + 1);
        FSet B = random_star_set(f, 4 + seed % 4, seed + 2);
        FSet C = random_star_set(f, 2 + seed % 6, seed + 3);
        for (Variant v : {Variant::Multiplicative, Variant::Additive}) {
            auto T = build_T(v, A, C, spec);
            auto R = build_R(v, A, B, C, spec);
            auto S = build_S(v, A, B, C, spec);
            const FSet F = image_f(spec, A, B);
            CHECK(R.size() == S.size());
            CHECK(R.size() == T.size() * F.size());
            CHECK(R.size() <= A.size() * C.size() * F.size());
            CHECK(std::is_sorted(R.begin(), R.end()));
            CHECK(std::adjacent_find(S.begin(), S.end()) == S.end());
        }
    }
}

TEST_CASE("p2 gate") {
    PrimeField f7(7);
    CHECK(p2_gate(48, f7));
    CHECK(p2_gate(49, f7));
    CHECK(!p2_gate(50, f7));
    CHECK(p2_gate(10000, PrimeField(101)));
}

TEST_CASE("rudnev rhs arithmetic") {
    CHECK(rudnev_rhs(4, 4, 2) == 16.0);
    CHECK(rudnev_rhs(1, 1, 1) == 2.0);
}

TEST_CASE("caps mark skipped work instead of failing") {
    PrimeField f(101);
    ExpanderSpec spec = identity_spec(f);
    FSet A = random_star_set(f, 8, 5), B = random_star_set(f, 8, 6),
         C = random_star_set(f, 8, 7);
    IncidenceCaps tight;
    tight.collinear_pair_budget = 0;
    tight.fast_work_budget = 0;
    IncidenceReport rep = incidence_report(Variant::Multiplicative, A, B, C, spec, 0, tight);
    CHECK(rep.incidences == -1);
    CHECK(rep.k_exact == -1);
    CHECK(rep.k_bound_ok);  // skipped, not failed
    CHECK(!rep.oracle_checked);
    CHECK(rep.rs_sizes_equal);
    CHECK(rep.product_structure_ok);
    CHECK(rep.rudnev_rhs_value > 0);
}
