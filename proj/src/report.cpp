#include "expander/report.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace expander {

using nlohmann::json;

TrialRecord make_trial_record(u64 trial, const PrimeField& field, const VerificationRecord& v,
                              const std::string& fam_A, const std::string& fam_B,
                              const std::string& fam_C, const std::string& g_tag,
                              const std::string& h_tag, u64 size_A, u64 size_B, u64 size_C) {
    TrialRecord r;
    r.trial = trial;
    r.p = field.modulus();
    r.size_A = size_A;
    r.size_B = size_B;
    r.size_C = size_C;
    r.variant = variant_name(v.variant);
    r.fam_A = fam_A;
    r.fam_B = fam_B;
    r.fam_C = fam_C;
    r.g_tag = g_tag;
    r.h_tag = h_tag;
    r.m = v.m;
    r.sum_E = v.energy.sum_E;
    r.energy = v.energy.energy;
    r.size_f_AB = v.size_f_AB;
    r.size_BC = v.size_BC;
    r.size_R = v.incidence.size_R;
    r.size_S = v.incidence.size_S;
    r.incidences = v.incidence.incidences;
    r.k_exact = v.incidence.k_exact;
    r.k_paper = v.incidence.k_paper;
    r.rudnev_rhs = v.incidence.rudnev_rhs_value;
    r.rudnev_ratio = v.incidence.rudnev_ratio;
    r.bound_new = v.bound_report.bound;
    r.bound_hh = v.bound_hh;
    r.measured_max = v.measured_max;
    r.chain_ok = v.chain_ok();
    return r;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

const std::vector<std::string>& trial_record_columns() {
    static const std::vector<std::string> cols = {
        "trial", "p", "size_A", "size_B", "size_C", "variant", "fam_A", "fam_B", "fam_C",
        "g", "h", "m", "sum_E", "E", "size_f_AB", "size_BC", "size_R", "size_S",
        "incidences", "k_exact", "k_paper", "rudnev_rhs", "rudnev_ratio",
        "bound_new", "bound_hh", "measured_max", "chain_ok"};
    return cols;
}

std::string csv_header() {
    std::string out;
    for (const auto& c : trial_record_columns()) {
        if (!out.empty()) out += ',';
        out += c;
    }
    return out;
}

std::string to_csv_row(const TrialRecord& r) {
    std::ostringstream out;
    out << r.trial << ',' << r.p << ',' << r.size_A << ',' << r.size_B << ',' << r.size_C << ','
        << r.variant << ',' << r.fam_A << ',' << r.fam_B << ',' << r.fam_C << ','
        << r.g_tag << ',' << r.h_tag << ',' << r.m << ','
        << to_string_u128(r.sum_E) << ',' << to_string_u128(r.energy) << ','
        << r.size_f_AB << ',' << r.size_BC << ',' << r.size_R << ',' << r.size_S << ','
        << r.incidences << ',' << r.k_exact << ',' << r.k_paper << ','
        << format_double(r.rudnev_rhs) << ',' << format_double(r.rudnev_ratio) << ','
        << format_double(r.bound_new) << ',' << format_double(r.bound_hh) << ','
        << r.measured_max << ',' << (r.chain_ok ? 1 : 0);
    return out.str();
}

TrialRecord from_csv_row(const std::string& line) {
    std::vector<std::string> f;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, ',')) f.push_back(cur);
    if (f.size() != trial_record_columns().size())
        throw std::invalid_argument("bad CSV row (field count): " + line);
    TrialRecord r;
    std::size_t i = 0;
    r.trial = std::stoull(f[i++]);
    r.p = std::stoull(f[i++]);
    r.size_A = std::stoull(f[i++]);
    r.size_B = std::stoull(f[i++]);
    r.size_C = std::stoull(f[i++]);
    r.variant = f[i++];
    r.fam_A = f[i++];
    r.fam_B = f[i++];
    r.fam_C = f[i++];
    r.g_tag = f[i++];
    r.h_tag = f[i++];
    r.m = std::stoull(f[i++]);
    r.sum_E = parse_u128(f[i++]);
    r.energy = parse_u128(f[i++]);
    r.size_f_AB = std::stoull(f[i++]);
    r.size_BC = std::stoull(f[i++]);
    r.size_R = std::stoull(f[i++]);
    r.size_S = std::stoull(f[i++]);
    r.incidences = std::stoll(f[i++]);
    r.k_exact = std::stoll(f[i++]);
    r.k_paper = std::stoull(f[i++]);
    r.rudnev_rhs = std::stod(f[i++]);
    r.rudnev_ratio = std::stod(f[i++]);
    r.bound_new = std::stod(f[i++]);
    r.bound_hh = std::stod(f[i++]);
    r.measured_max = std::stoull(f[i++]);
    r.chain_ok = f[i++] == "1";
    return r;
}

namespace {

json record_to_json(const TrialRecord& r) {
    json j;
    j["trial"] = r.trial;
    j["p"] = r.p;
    j["size_A"] = r.size_A;
    j["size_B"] = r.size_B;
    j["size_C"] = r.size_C;
    j["variant"] = r.variant;
    j["fam_A"] = r.fam_A;
    j["fam_B"] = r.fam_B;
    j["fam_C"] = r.fam_C;
    j["g"] = r.g_tag;
    j["h"] = r.h_tag;
    j["m"] = r.m;
    // counters are serialized as decimal strings: they may exceed 64 bits
    j["sum_E"] = to_string_u128(r.sum_E);
    j["E"] = to_string_u128(r.energy);
    j["size_f_AB"] = r.size_f_AB;
    j["size_BC"] = r.size_BC;
    j["size_R"] = r.size_R;
    j["size_S"] = r.size_S;
    j["incidences"] = r.incidences;
    j["k_exact"] = r.k_exact;
    j["k_paper"] = r.k_paper;
    j["rudnev_rhs"] = format_double(r.rudnev_rhs);
    j["rudnev_ratio"] = format_double(r.rudnev_ratio);
    j["bound_new"] = format_double(r.bound_new);
    j["bound_hh"] = format_double(r.bound_hh);
    j["measured_max"] = r.measured_max;
    j["chain_ok"] = r.chain_ok;
    return j;
}

TrialRecord record_from_json(const json& j) {
    TrialRecord r;
    r.trial = j.at("trial").get<u64>();
    r.p = j.at("p").get<u64>();
    r.size_A = j.at("size_A").get<u64>();
    r.size_B = j.at("size_B").get<u64>();
    r.size_C = j.at("size_C").get<u64>();
    r.variant = j.at("variant").get<std::string>();
    r.fam_A = j.at("fam_A").get<std::string>();
    r.fam_B = j.at("fam_B").get<std::string>();
    r.fam_C = j.at("fam_C").get<std::string>();
    r.g_tag = j.at("g").get<std::string>();
    r.h_tag = j.at("h").get<std::string>();
    r.m = j.at("m").get<u64>();
    r.sum_E = parse_u128(j.at("sum_E").get<std::string>());
    r.energy = parse_u128(j.at("E").get<std::string>());
    r.size_f_AB = j.at("size_f_AB").get<u64>();
    r.size_BC = j.at("size_BC").get<u64>();
    r.size_R = j.at("size_R").get<u64>();
    r.size_S = j.at("size_S").get<u64>();
    r.incidences = j.at("incidences").get<i64>();
    r.k_exact = j.at("k_exact").get<i64>();
    r.k_paper = j.at("k_paper").get<u64>();
    r.rudnev_rhs = std::stod(j.at("rudnev_rhs").get<std::string>());
    r.rudnev_ratio = std::stod(j.at("rudnev_ratio").get<std::string>());
    r.bound_new = std::stod(j.at("bound_new").get<std::string>());
    r.bound_hh = std::stod(j.at("bound_hh").get<std::string>());
    r.measured_max = j.at("measured_max").get<u64>();
    r.chain_ok = j.at("chain_ok").get<bool>();
    return r;
}

}  // namespace

std::string to_json_array(const std::vector<TrialRecord>& records) {
    json arr = json::array();
    for (const auto& r : records) arr.push_back(record_to_json(r));
    return arr.dump(2);
}

std::vector<TrialRecord> from_json_text(const std::string& text) {
    json arr = json::parse(text);
    std::vector<TrialRecord> out;
    for (const auto& j : arr) out.push_back(record_from_json(j));
    return out;
}

ReportFormat parse_format(const std::string& name) {
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    throw std::invalid_argument("unknown format: " + name);
}

void write_records(const std::string& path, const std::vector<TrialRecord>& records,
                   ReportFormat format, bool deterministic) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    std::string stamp;
    if (!deterministic) {
        auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[64];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        stamp = buf;
    }
    if (format == ReportFormat::Csv) {
        if (!deterministic) out << "# generated " << stamp << "\n";
        out << csv_header() << "\n";
        for (const auto& r : records) out << to_csv_row(r) << "\n";
    } else {
        json doc;
        if (!deterministic) doc["generated"] = stamp;
        doc["records"] = json::parse(to_json_array(records));
        out << doc.dump(2) << "\n";
    }
}

std::vector<TrialRecord> read_records(const std::string& path, ReportFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open report file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    if (format == ReportFormat::Json) {
        json doc = json::parse(buf.str());
        std::vector<TrialRecord> out;
        for (const auto& j : doc.at("records")) out.push_back(record_from_json(j));
        return out;
    }
    std::vector<TrialRecord> out;
    std::string line;
    std::istringstream lines(buf.str());
    bool header_seen = false;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {  // header row
            header_seen = true;
            continue;
        }
        out.push_back(from_csv_row(line));
    }
    return out;
}

std::vector<std::string> selfcheck_records(const std::vector<TrialRecord>& records) {
    std::vector<std::string> violations;
    auto flag = [&](const TrialRecord& r, const std::string& what) {
        violations.push_back("trial " + std::to_string(r.trial) + " (" + r.variant + "): " + what);
    };
    for (const auto& r : records) {
        if (!r.chain_ok) flag(r, "chain_ok is false");
        if (checked_mul(r.sum_E, r.m) < checked_mul(checked_mul(static_cast<u128>(r.size_A), r.size_B), r.size_C))
            flag(r, "counting lower bound violated");
        if (checked_mul(r.sum_E, r.sum_E) > checked_mul(r.energy, r.size_BC))
            flag(r, "Cauchy-Schwarz violated");
        if (r.incidences >= 0 && r.energy > static_cast<u128>(r.incidences))
            flag(r, "E > I(R,S)");
        if (r.k_exact >= 0 && static_cast<u64>(r.k_exact) > r.k_paper)
            flag(r, "k_exact exceeds its bound");
        if (r.size_R != r.size_S) flag(r, "|R| != |S|");
        if (static_cast<u128>(r.incidences >= 0 ? r.incidences : 0) >
            static_cast<u128>(r.size_R) * r.size_S)
            flag(r, "I(R,S) exceeds |R||S|");
    }
    return violations;
}

}  // namespace expander
