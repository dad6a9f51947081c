#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "expander/report.hpp"

using namespace expander;

namespace {

TrialRecord sample_record() {
    TrialRecord r;
    r.trial = 3;
    r.p = 101;
    r.size_A = 8;
    r.size_B = 9;
    r.size_C = 10;
    r.variant = "mult";
    r.fam_A = "random:8";
    r.fam_B = "random:9";
    r.fam_C = "random:10";
    r.g_tag = "identity";
    r.h_tag = "inverse";
    r.m = 2;
    r.sum_E = 718;  // 718 * 2 >= 720 = |A||B||C|
    r.energy = 6500;
    r.size_f_AB = 60;
    r.size_BC = 80;
    r.size_R = 4800;
    r.size_S = 4800;
    r.incidences = 7000;
    r.k_exact = 10;
    r.k_paper = 60;
    r.rudnev_rhs = 380570.0;
    r.rudnev_ratio = 0.018393;
    r.bound_new = 17.1;
    r.bound_hh = 51.3;
    r.measured_max = 80;
    r.chain_ok = true;
    return r;
}

}  // namespace

TEST_CASE("format_double uses six significant digits") {
    CHECK(format_double(6.82842712474619) == "6.82843");
    CHECK(format_double(0.0834) == "0.0834");
    CHECK(format_double(-1.0) == "-1");
    CHECK(format_double(123456789.0) == "1.23457e+08");
}

TEST_CASE("CSV round trip") {
    TrialRecord r = sample_record();
    std::string row = to_csv_row(r);
    CHECK(row.find("mult") != std::string::npos);
    TrialRecord back = from_csv_row(row);
    CHECK(back.trial == r.trial);
    CHECK(back.sum_E == r.sum_E);
    CHECK(back.energy == r.energy);
    CHECK(back.k_exact == r.k_exact);
    CHECK(back.chain_ok == r.chain_ok);
    CHECK(back.fam_B == "random:9");
    // header has one name per field, in order
    std::string header = csv_header();
    CHECK(std::count(header.begin(), header.end(), ',') ==
          std::count(row.begin(), row.end(), ','));
    CHECK_THROWS_AS(from_csv_row("1,2,3"), std::invalid_argument);
}

TEST_CASE("JSON round trip") {
    std::vector<TrialRecord> recs{sample_record(), sample_record()};
    recs[1].trial = 4;
    recs[1].variant = "add";
    recs[1].sum_E = static_cast<u128>(UINT64_MAX) * 3;  // exceeds 64 bits
    auto back = from_json_text(to_json_array(recs));
    REQUIRE(back.size() == 2);
    CHECK(back[0] == recs[0]);
    CHECK(back[1].sum_E == recs[1].sum_E);
    CHECK(back[1].variant == "add");
}

TEST_CASE("file round trip, both formats") {
    std::vector<TrialRecord> recs{sample_record()};
    for (auto fmt : {ReportFormat::Csv, ReportFormat::Json}) {
        const char* path = fmt == ReportFormat::Csv ? "report_test.csv" : "report_test.json";
        write_records(path, recs, fmt, /*deterministic=*/true);
        auto back = read_records(path, fmt);
        REQUIRE(back.size() == 1);
        CHECK(back[0] == recs[0]);
        std::remove(path);
    }
}

TEST_CASE("deterministic output omits the timestamp line") {
    std::vector<TrialRecord> recs{sample_record()};
    write_records("det_a.csv", recs, ReportFormat::Csv, true);
    write_records("det_b.csv", recs, ReportFormat::Csv, true);
    std::ifstream a("det_a.csv"), b("det_b.csv");
    std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
    CHECK(sa.rfind("trial,", 0) == 0);  // header first, no comment
    write_records("det_c.csv", recs, ReportFormat::Csv, false);
    std::ifstream c("det_c.csv");
    std::string sc((std::istreambuf_iterator<char>(c)), std::istreambuf_iterator<char>());
    CHECK(sc.rfind("# generated ", 0) == 0);
    std::remove("det_a.csv");
    std::remove("det_b.csv");
    std::remove("det_c.csv");
}

TEST_CASE("selfcheck catches violated invariants") {
    std::vector<TrialRecord> recs{sample_record()};
    CHECK(selfcheck_records(recs).empty());

    TrialRecord bad = sample_record();
    bad.incidences = 6000;  // below E = 6500
    recs.push_back(bad);
    auto v1 = selfcheck_records(recs);
    REQUIRE(v1.size() == 1);
    CHECK(v1[0].find("E > I") != std::string::npos);

    TrialRecord bad2 = sample_record();
    bad2.size_S = 479;
    auto v2 = selfcheck_records({bad2});
    REQUIRE(v2.size() == 1);
    CHECK(v2[0].find("|R| != |S|") != std::string::npos);

    TrialRecord bad3 = sample_record();
    bad3.sum_E = 5;  // 5 * m < |A||B||C| = 720
    auto v3 = selfcheck_records({bad3});
    CHECK(!v3.empty());

    TrialRecord bad4 = sample_record();
    bad4.chain_ok = false;
    CHECK(!selfcheck_records({bad4}).empty());

    TrialRecord capped = sample_record();
    capped.incidences = -1;  // capped runs stay clean
    capped.k_exact = -1;
    CHECK(selfcheck_records({capped}).empty());
}
