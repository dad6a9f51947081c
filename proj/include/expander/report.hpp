#pragma once

#include <string>
#include <vector>

#include "expander/theorems.hpp"

namespace expander {

/// One row of an experiment or verification run. The CSV column order is
/// exactly the member order here; JSON mirrors the member names.
struct TrialRecord {
    u64 trial = 0;
    u64 p = 0;
    u64 size_A = 0, size_B = 0, size_C = 0;
    std::string variant;  // mult | add
    std::string fam_A, fam_B, fam_C;
    std::string g_tag, h_tag;
    u64 m = 1;
    u128 sum_E = 0;
    u128 energy = 0;
    u64 size_f_AB = 0;
    u64 size_BC = 0;
    u64 size_R = 0, size_S = 0;
    i64 incidences = -1;  // -1: skipped (over budget)
    i64 k_exact = -1;     // -1: bounded, not exact (over pair budget)
    u64 k_paper = 0;
    double rudnev_rhs = 0;
    double rudnev_ratio = -1;
    double bound_new = 0;
    double bound_hh = 0;
    u64 measured_max = 0;
    bool chain_ok = false;

    bool operator==(const TrialRecord&) const = default;
};

TrialRecord make_trial_record(u64 trial, const PrimeField& field, const VerificationRecord& v,
                              const std::string& fam_A, const std::string& fam_B,
                              const std::string& fam_C, const std::string& g_tag,
                              const std::string& h_tag, u64 size_A, u64 size_B, u64 size_C);

/// Floating-point rendering used in every report: 6 significant digits.
std::string format_double(double v);

const std::vector<std::string>& trial_record_columns();
std::string csv_header();
std::string to_csv_row(const TrialRecord& r);
TrialRecord from_csv_row(const std::string& line);

std::string to_json_array(const std::vector<TrialRecord>& records);
std::vector<TrialRecord> from_json_text(const std::string& text);

enum class ReportFormat { Csv, Json };

ReportFormat parse_format(const std::string& name);

/// Writes records to `path`. A timestamp comment is prepended unless
/// `deterministic` is set, so deterministic runs are byte-identical.
void write_records(const std::string& path, const std::vector<TrialRecord>& records,
                   ReportFormat format, bool deterministic);

std::vector<TrialRecord> read_records(const std::string& path, ReportFormat format);

/// Re-validates loaded records against the invariants they were produced
/// under (chain flag, Cauchy-Schwarz, counting bound, E <= I, k bounds,
/// |R| = |S|). Returns human-readable violation descriptions, empty if clean.
std::vector<std::string> selfcheck_records(const std::vector<TrialRecord>& records);

}  // namespace expander
