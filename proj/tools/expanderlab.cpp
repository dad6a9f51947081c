// expanderlab: seeded experiment batches over F_p for the expander map
// f(x,y) = g(x)(h(x)+y): exact level-count/incidence chain verification,
// exponent sweeps, incidence statistics and bound tables.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "expander/prng.hpp"
#include "expander/report.hpp"

using namespace expander;

namespace {

std::string timestamp_utc() {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

struct CommonOpts {
    std::string config_path;  // consumed by expand_config; listed here for --help
    u64 p = 101;
    std::string variant = "both";
    std::string fam_A = "random:8", fam_B = "random:8", fam_C = "random:8";
    std::string g_fam = "identity", h_fam = "identity";
    u64 trials = 1;
    u64 seed = 0;
    std::string out;
    std::string format = "csv";
    bool deterministic = false;
    bool selfcheck = false;
    u64 collinear_budget = 200'000;
    u64 oracle_budget = 10'000'000;
    u64 incidence_budget = 100'000'000;
};

struct ExperimentOpts {
    std::vector<u64> sizes{8, 16, 32};
    bool tie_sets = false;
    double growth_eps = 0.0;  // 0: growth bookkeeping disabled
};

struct BoundsOpts {
    std::vector<u64> sizes{8, 16, 32};
    u64 m = 1;
};

// Expands "--config <path>" into the file's "--key=value" tokens in place.
// Keys mirror the long flag names ('_' and '-' interchangeable); '#' starts a
// comment. Flags parsed later win, so command-line overrides follow the file.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string path;
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw std::invalid_argument("--config needs a path");
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            out.push_back(args[i]);
            continue;
        }
        std::ifstream file(path);
        if (!file) throw std::invalid_argument("cannot open config file: " + path);
        std::string line;
        while (std::getline(file, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            auto eq = line.find('=');
            if (eq == std::string::npos) {
                if (line.find_first_not_of(" \t\r") != std::string::npos)
                    throw std::invalid_argument("bad config line (need key = value): " + line);
                continue;
            }
            auto trim = [](std::string s) {
                auto b = s.find_first_not_of(" \t\r");
                auto e = s.find_last_not_of(" \t\r");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };
            std::string key = trim(line.substr(0, eq));
            std::string value = trim(line.substr(eq + 1));
            if (key.empty()) throw std::invalid_argument("bad config line: " + line);
            std::replace(key.begin(), key.end(), '_', '-');
            out.push_back("--" + key + "=" + value);
        }
    }
    return out;
}

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->set_help_flag("--help", "print help");  // frees -h for the h-function flag
    cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd->add_option("--p", o.p, "prime modulus");
    cmd->add_option("--variant", o.variant, "mult | add | both")
        ->check(CLI::IsMember({"mult", "add", "both"}));
    cmd->add_option("--family-A", o.fam_A, "set family for A");
    cmd->add_option("--family-B", o.fam_B, "set family for B");
    cmd->add_option("--family-C", o.fam_C, "set family for C");
    cmd->add_option("--g", o.g_fam, "function family for g");
    cmd->add_option("--h", o.h_fam, "function family for h");
    cmd->add_option("--trials", o.trials, "number of trials")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "base seed");
    cmd->add_option("--out", o.out, "output report path");
    cmd->add_option("--format", o.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--deterministic", o.deterministic, "suppress the timestamp header");
    cmd->add_flag("--selfcheck", o.selfcheck, "re-validate emitted records");
    cmd->add_option("--collinear-budget", o.collinear_budget,
                    "max point pairs for exact collinearity");
    cmd->add_option("--oracle-budget", o.oracle_budget,
                    "max |R||S| for the naive incidence cross-check");
    cmd->add_option("--incidence-budget", o.incidence_budget,
                    "max |S||T| work for the grouped incidence counter");
}

std::vector<Variant> variants_from(const std::string& s) {
    if (s == "mult") return {Variant::Multiplicative};
    if (s == "add") return {Variant::Additive};
    return {Variant::Multiplicative, Variant::Additive};
}

IncidenceCaps caps_from(const CommonOpts& o) {
    return IncidenceCaps{o.collinear_budget, o.oracle_budget, o.incidence_budget};
}

struct TrialSetup {
    PrimeField field;
    ExpanderSpec spec;
    SetFamilySpec fam_A, fam_B, fam_C;
};

TrialSetup build_setup(const CommonOpts& o) {
    PrimeField field(o.p);
    FunctionTable g = parse_function_family(o.g_fam, field, fstar(field));
    FunctionTable h = parse_function_family(o.h_fam, field, g.domain());
    return TrialSetup{field, ExpanderSpec(std::move(g), std::move(h)),
                      SetFamilySpec::parse(o.fam_A), SetFamilySpec::parse(o.fam_B),
                      SetFamilySpec::parse(o.fam_C)};
}

struct TrialSets {
    FSet A, B, C;
};

TrialSets make_sets(const TrialSetup& s, const CommonOpts& o, u64 trial, bool tie_sets) {
    FSet A = generate(s.fam_A.with_seed(derive_seed(o.seed, 1, trial)), s.field);
    if (tie_sets) return {A, A, A};
    FSet B = generate(s.fam_B.with_seed(derive_seed(o.seed, 2, trial)), s.field);
    FSet C = generate(s.fam_C.with_seed(derive_seed(o.seed, 3, trial)), s.field);
    return {std::move(A), std::move(B), std::move(C)};
}

// Runs all requested trials; records land in trial-major, variant-minor order
// regardless of how the loop is scheduled.
std::vector<TrialRecord> run_batch(const TrialSetup& setup, const CommonOpts& o,
                                   bool tie_sets) {
    const auto variants = variants_from(o.variant);
    const IncidenceCaps caps = caps_from(o);
    std::vector<TrialRecord> records(o.trials * variants.size());
    std::string first_error;
    const auto n = static_cast<std::ptrdiff_t>(o.trials);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t t = 0; t < n; ++t) {
        try {
            const u64 trial = static_cast<u64>(t);
            TrialSets sets = make_sets(setup, o, trial, tie_sets);
            for (std::size_t vi = 0; vi < variants.size(); ++vi) {
                VerificationRecord v = verify_theorem(variants[vi], sets.A, sets.B, sets.C,
                                                      setup.spec, setup.field, caps);
                records[trial * variants.size() + vi] = make_trial_record(
                    trial, setup.field, v, setup.fam_A.tag,
                    tie_sets ? setup.fam_A.tag : setup.fam_B.tag,
                    tie_sets ? setup.fam_A.tag : setup.fam_C.tag,
                    setup.spec.g.family_tag(), setup.spec.h.family_tag(), sets.A.size(),
                    sets.B.size(), sets.C.size());
            }
        } catch (const std::exception& e) {
#pragma omp critical(run_batch_error)
            if (first_error.empty()) first_error = e.what();
        }
    }
    if (!first_error.empty()) throw std::runtime_error(first_error);
    return records;
}

int emit_and_check(const std::vector<TrialRecord>& records, const CommonOpts& o) {
    if (!o.out.empty())
        write_records(o.out, records, parse_format(o.format), o.deterministic);
    if (o.selfcheck) {
        auto loaded = o.out.empty() ? records : read_records(o.out, parse_format(o.format));
        auto violations = selfcheck_records(loaded);
        if (!violations.empty()) {
            for (const auto& v : violations) std::cerr << "selfcheck: " << v << "\n";
            return 1;
        }
        std::cout << "selfcheck: " << loaded.size() << " records clean\n";
    }
    return 0;
}

int run_verify(const CommonOpts& o) {
    TrialSetup setup = build_setup(o);
    auto records = run_batch(setup, o, false);
    u64 failed = 0;
    for (const auto& r : records)
        if (!r.chain_ok) ++failed;
    std::cout << "verify: " << records.size() << " records, "
              << (records.size() - failed) << " chain-clean, " << failed << " violations\n";
    int rc = emit_and_check(records, o);
    if (failed > 0) return 1;
    return rc;
}

int run_incidence(const CommonOpts& o) {
    TrialSetup setup = build_setup(o);
    auto records = run_batch(setup, o, false);
    u64 failed = 0;
    for (const auto& r : records) {
        if (!r.chain_ok) ++failed;
        std::cout << "trial " << r.trial << " " << r.variant << ": |R|=" << r.size_R
                  << " |S|=" << r.size_S << " I=" << r.incidences << " k=" << r.k_exact
                  << " k_bound=" << r.k_paper << " rhs=" << format_double(r.rudnev_rhs)
                  << " ratio=" << format_double(r.rudnev_ratio) << "\n";
    }
    int rc = emit_and_check(records, o);
    if (failed > 0) return 1;
    return rc;
}

std::string growth_csv_suffix(const GrowthReport& g) {
    std::ostringstream out;
    out << ',' << format_double(g.eps_input) << ',' << (g.hypothesis_holds ? 1 : 0) << ','
        << format_double(g.eps_realized) << ','
        << format_double(g.predicted_exponent_realized) << ','
        << format_double(g.realized_exponent);
    return out.str();
}

int run_experiment(const CommonOpts& o, const ExperimentOpts& e) {
    if (e.sizes.empty()) throw std::invalid_argument("experiment needs a size grid");
    struct Row {
        TrialRecord rec;
        bool has_growth = false;
        GrowthReport growth;
    };
    std::vector<Row> rows;
    const TrialSetup base = build_setup(o);

    for (u64 size : e.sizes) {
        TrialSetup setup = base;
        setup.fam_A = base.fam_A.with_size(size);
        auto records = run_batch(setup, o, e.tie_sets);
        for (auto& rec : records) {
            Row row;
            row.rec = rec;
            if (e.growth_eps > 0.0) {
                // growth bookkeeping is defined on tied sets A = B = C
                TrialSets sets = make_sets(setup, o, rec.trial, true);
                row.growth =
                    conditional_growth_check(sets.A, setup.spec, e.growth_eps, setup.field);
                row.has_growth = true;
            }
            rows.push_back(std::move(row));
        }
    }

    // aggregate table: realized exponent log(measured_max)/log|A| per grid size
    std::ostringstream agg;
    agg << "size_A,trials,exponent_min,exponent_mean,exponent_max\n";
    for (u64 size : e.sizes) {
        double lo = 1e300, hi = -1e300, sum = 0;
        u64 count = 0;
        for (const Row& row : rows) {
            if (row.rec.size_A != size) continue;
            double ex = std::log(static_cast<double>(row.rec.measured_max)) /
                        std::log(static_cast<double>(size));
            lo = std::min(lo, ex);
            hi = std::max(hi, ex);
            sum += ex;
            ++count;
        }
        if (count == 0) continue;
        agg << size << ',' << count << ',' << format_double(lo) << ','
            << format_double(sum / static_cast<double>(count)) << ',' << format_double(hi)
            << "\n";
    }
    std::cout << agg.str();

    if (!o.out.empty()) {
        if (parse_format(o.format) == ReportFormat::Csv) {
            std::ofstream file(o.out, std::ios::binary);
            if (!file) throw std::runtime_error("cannot open output file: " + o.out);
            if (!o.deterministic) file << "# generated " << timestamp_utc() << "\n";
            file << csv_header();
            if (e.growth_eps > 0.0)
                file << ",growth_eps,growth_hypothesis,growth_eps_realized,"
                        "growth_pred_exponent,growth_realized_exponent";
            file << "\n";
            for (const Row& row : rows) {
                file << to_csv_row(row.rec);
                if (row.has_growth) file << growth_csv_suffix(row.growth);
                file << "\n";
            }
        } else {
            nlohmann::json doc;
            if (!o.deterministic) doc["generated"] = timestamp_utc();
            nlohmann::json arr = nlohmann::json::array();
            for (const Row& row : rows) {
                nlohmann::json j =
                    nlohmann::json::parse(to_json_array({row.rec})).at(0);
                if (row.has_growth) {
                    j["growth_eps"] = format_double(row.growth.eps_input);
                    j["growth_hypothesis"] = row.growth.hypothesis_holds;
                    j["growth_eps_realized"] = format_double(row.growth.eps_realized);
                    j["growth_pred_exponent"] =
                        format_double(row.growth.predicted_exponent_realized);
                    j["growth_realized_exponent"] =
                        format_double(row.growth.realized_exponent);
                }
                arr.push_back(std::move(j));
            }
            doc["records"] = std::move(arr);
            std::ofstream file(o.out, std::ios::binary);
            if (!file) throw std::runtime_error("cannot open output file: " + o.out);
            file << doc.dump(2) << "\n";
        }
        std::ofstream aggfile(o.out + ".aggregate.csv", std::ios::binary);
        aggfile << agg.str();
    }

    for (const Row& row : rows)
        if (!row.rec.chain_ok) return 1;
    return 0;
}

int run_bounds(const CommonOpts& o, const BoundsOpts& b) {
    PrimeField field(o.p);  // validates the modulus
    std::ostringstream out;
    out << "size,m,p,hh_product_bound,new_max_bound,hh_value_larger,p58_edge\n";
    for (u64 n : b.sizes) {
        BoundComparison c = compare_bounds(n, n, n, b.m, o.p);
        out << n << ',' << b.m << ',' << o.p << ',' << format_double(c.hh_product_bound)
            << ',' << format_double(c.new_max_bound) << ',' << (c.hh_value_larger ? 1 : 0)
            << ',' << (c.p58_edge ? 1 : 0) << "\n";
    }
    std::cout << out.str();
    if (!o.out.empty()) {
        std::ofstream file(o.out, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output file: " + o.out);
        file << out.str();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"prime-field expander experiments: f(x,y) = g(x)(h(x)+y)"};
    app.require_subcommand(1);

    CommonOpts vo, io, eo, bo;
    ExperimentOpts ex;
    BoundsOpts bs;

    CLI::App* verify = app.add_subcommand("verify", "run the exact chain checks over trials");
    add_common(verify, vo);

    CLI::App* incidence =
        app.add_subcommand("incidence", "point-plane incidence statistics per trial");
    add_common(incidence, io);

    CLI::App* experiment =
        app.add_subcommand("experiment", "sweep |A| over a grid, tabulate exponents");
    add_common(experiment, eo);
    experiment->add_option("--sizes", ex.sizes, "grid of |A| values")->delimiter(',');
    experiment->add_flag("--tie-sets", ex.tie_sets, "use B = C = A");
    experiment->add_option("--growth-eps", ex.growth_eps,
                           "enable conditional growth bookkeeping with this epsilon");

    CLI::App* bounds = app.add_subcommand("bounds", "bound evaluator table");
    add_common(bounds, bo);
    bounds->add_option("--sizes", bs.sizes, "grid of set sizes")->delimiter(',');
    bounds->add_option("--m", bs.m, "multiplicity parameter m")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = expand_config(args);
        std::vector<std::string> tokens{argv[0]};
        tokens.insert(tokens.end(), args.begin(), args.end());
        std::vector<char*> ptrs;
        for (auto& t : tokens) ptrs.push_back(t.data());
        app.parse(static_cast<int>(ptrs.size()), ptrs.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*verify) return run_verify(vo);
        if (*incidence) return run_incidence(io);
        if (*experiment) return run_experiment(eo, ex);
        if (*bounds) return run_bounds(bo, bs);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
