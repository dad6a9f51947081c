#include "expander/functions.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace expander {

FunctionTable::FunctionTable(FSet domain, std::vector<u64> values, std::string tag,
                             bool allow_zero)
    : domain_(std::move(domain)), values_(std::move(values)), tag_(std::move(tag)) {
    if (values_.size() != domain_.size())
        throw std::invalid_argument("value vector does not match domain size");
    if (!domain_.is_star()) throw std::invalid_argument("function domain must avoid 0");
    const u64 p = domain_.modulus();
    for (u64 v : values_) {
        if (v >= p) throw std::invalid_argument("function value out of range");
        if (v == 0) {
            if (!allow_zero) throw std::invalid_argument("function value 0 leaves F_p^*");
            has_zero_ = true;
        }
    }
}

FunctionTable FunctionTable::identity(const FSet& domain) {
    return FunctionTable(domain, domain.elements(), "identity", false);
}

FunctionTable FunctionTable::constant(const FSet& domain, u64 c) {
    // c == 0 is the extended family used by the A*B corollary route
    return FunctionTable(domain, std::vector<u64>(domain.size(), c),
                         "constant:" + std::to_string(c), c == 0);
}

FunctionTable FunctionTable::inverse(const FSet& domain) {
    const PrimeField& f = domain.field();
    std::vector<u64> vals(domain.size());
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = f.inv(domain.elements()[i]);
    return FunctionTable(domain, std::move(vals), "inverse", false);
}

FunctionTable FunctionTable::monomial(const FSet& domain, i64 k) {
    const PrimeField& f = domain.field();
    const u64 p = f.modulus();
    // reduce the exponent mod p-1 (valid on F_p^*), mapping negatives up
    u64 e = k >= 0 ? static_cast<u64>(k) % (p - 1)
                   : (p - 1) - static_cast<u64>(-(k + 1)) % (p - 1) - 1;
    std::vector<u64> vals(domain.size());
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = f.pow(domain.elements()[i], e);
    return FunctionTable(domain, std::move(vals), "monomial:" + std::to_string(k), false);
}

FunctionTable FunctionTable::explicit_table(const FSet& domain, std::vector<u64> values,
                                            std::string tag) {
    return FunctionTable(domain, std::move(values), std::move(tag), false);
}

u64 FunctionTable::value_at(u64 x) const {
    const auto& elems = domain_.elements();
    auto it = std::lower_bound(elems.begin(), elems.end(), x);
    if (it == elems.end() || *it != x) throw std::domain_error("argument outside function domain");
    return values_[static_cast<std::size_t>(it - elems.begin())];
}

u64 mu(const FunctionTable& t) {
    if (t.domain().empty()) throw std::domain_error("mu of an empty domain");
    if (t.has_zero_value()) throw std::domain_error("mu undefined for tables leaving F_p^*");
    std::unordered_map<u64, u64> fibers;
    for (u64 v : t.values()) ++fibers[v];
    u64 best = 0;
    for (const auto& [value, count] : fibers) best = std::max(best, count);
    return best;
}

FunctionTable pointwise_product(const FunctionTable& g, const FunctionTable& h) {
    if (!(g.domain() == h.domain())) throw std::invalid_argument("domain mismatch");
    const PrimeField& f = g.field();
    std::vector<u64> vals(g.values().size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        vals[i] = f.mul(g.values()[i], h.values()[i]);
        if (vals[i] == 0)
            throw std::invalid_argument("pointwise product leaves F_p^*");
    }
    return FunctionTable::explicit_table(g.domain(), std::move(vals),
                                         "product(" + g.family_tag() + "," + h.family_tag() + ")");
}

ExpanderSpec::ExpanderSpec(FunctionTable g_table, FunctionTable h_table)
    : g(std::move(g_table)), h(std::move(h_table)) {
    if (!(g.domain() == h.domain()))
        throw std::invalid_argument("g and h must share one domain");
}

u64 eval_f(const ExpanderSpec& spec, u64 a, u64 b) {
    const PrimeField& f = spec.field();
    return f.mul(spec.g.value_at(a), f.add(spec.h.value_at(a), b));
}

FSet image_f(const ExpanderSpec& spec, const FSet& A, const FSet& B) {
    const PrimeField& f = spec.field();
    if (A.modulus() != f.modulus() || B.modulus() != f.modulus())
        throw std::invalid_argument("modulus mismatch");
    // resolve g/h over A once; the loop below is then pure arithmetic
    std::vector<u64> ga(A.size()), ha(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) {
        ga[i] = spec.g.value_at(A.elements()[i]);
        ha[i] = spec.h.value_at(A.elements()[i]);
    }
    std::vector<u64> vals;
    vals.reserve(A.size() * B.size());
    for (std::size_t i = 0; i < A.size(); ++i)
        for (u64 b : B.elements()) vals.push_back(f.mul(ga[i], f.add(ha[i], b)));
    return FSet(f, std::move(vals));
}

FunctionTable parse_function_family(const std::string& text, const PrimeField& field,
                                    const FSet& domain) {
    if (text == "identity") return FunctionTable::identity(domain);
    if (text == "inverse") return FunctionTable::inverse(domain);
    if (text.rfind("constant:", 0) == 0)
        return FunctionTable::constant(domain, std::stoull(text.substr(9)));
    if (text.rfind("monomial:", 0) == 0)
        return FunctionTable::monomial(domain, std::stoll(text.substr(9)));
    if (text.rfind("explicit:", 0) == 0) {
        std::string path = text.substr(9);
        std::ifstream file(path);
        if (!file) throw std::invalid_argument("cannot open function table: " + path);
        std::vector<std::pair<u64, u64>> rows;
        std::string line;
        while (std::getline(file, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream ls(line);
            u64 x, v;
            if (!(ls >> x >> v)) throw std::invalid_argument("bad table row: " + line);
            rows.emplace_back(x, v);
        }
        std::sort(rows.begin(), rows.end());
        std::vector<u64> xs, vs;
        for (auto& [x, v] : rows) {
            if (!xs.empty() && xs.back() == x)
                throw std::invalid_argument("duplicate domain point in table");
            xs.push_back(x);
            vs.push_back(v);
        }
        return FunctionTable::explicit_table(FSet(field, xs), std::move(vs), text);
    }
    throw std::invalid_argument("unknown function family: " + text);
}

}  // namespace expander
