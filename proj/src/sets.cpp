#include "expander/sets.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "expander/prng.hpp"

namespace expander {

namespace {

// Below this modulus, pairwise set operations mark a byte-per-residue table;
// above it they sort and deduplicate the raw values instead.
constexpr u64 kBitmapCap = u64{1} << 24;

std::vector<u64> dedup_sorted(std::vector<u64> vals) {
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

template <typename Op>
FSet pairwise(const FSet& A, const FSet& B, Op op) {
    if (A.modulus() != B.modulus()) throw std::invalid_argument("modulus mismatch");
    const PrimeField f = A.field();
    if (f.modulus() <= kBitmapCap) {
        std::vector<std::uint8_t> seen(f.modulus(), 0);
        for (u64 a : A.elements())
            for (u64 b : B.elements()) seen[op(f, a, b)] = 1;
        std::vector<u64> out;
        for (u64 v = 0; v < seen.size(); ++v)
            if (seen[v]) out.push_back(v);
        return FSet(f, std::move(out));
    }
    std::vector<u64> vals;
    vals.reserve(A.size() * B.size());
    for (u64 a : A.elements())
        for (u64 b : B.elements()) vals.push_back(op(f, a, b));
    return FSet(f, dedup_sorted(std::move(vals)));
}

}  // namespace

FSet::FSet(const PrimeField& field, std::vector<u64> elements)
    : field_(field), elements_(dedup_sorted(std::move(elements))) {
    if (!elements_.empty() && elements_.back() >= field_.modulus())
        throw std::invalid_argument("set element out of range");
}

bool FSet::contains(u64 x) const {
    return std::binary_search(elements_.begin(), elements_.end(), x);
}

FSet sumset(const FSet& A, const FSet& B) {
    return pairwise(A, B, [](const PrimeField& f, u64 a, u64 b) { return f.add(a, b); });
}

FSet productset(const FSet& A, const FSet& B) {
    return pairwise(A, B, [](const PrimeField& f, u64 a, u64 b) { return f.mul(a, b); });
}

FSet fstar(const PrimeField& field) {
    std::vector<u64> all(field.modulus() - 1);
    for (u64 i = 0; i < all.size(); ++i) all[i] = i + 1;
    return FSet(field, std::move(all));
}

bool below_p58(u64 size, u64 p) { return pow_leq(size, 8, p, 5); }

bool hypothesis_gate(std::span<const FSet* const> sets, const PrimeField& field) {
    for (const FSet* s : sets) {
        if (s->modulus() != field.modulus()) throw std::invalid_argument("modulus mismatch");
        if (!below_p58(s->size(), field.modulus())) return false;
    }
    return true;
}

bool hypothesis_gate(std::initializer_list<const FSet*> sets, const PrimeField& field) {
    return hypothesis_gate(std::span<const FSet* const>(sets.begin(), sets.size()), field);
}

SetFamilySpec SetFamilySpec::parse(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ':')) parts.push_back(cur);
    if (parts.empty()) throw std::invalid_argument("empty set family");

    auto num = [&](std::size_t i) -> u64 {
        if (i >= parts.size()) throw std::invalid_argument("set family missing parameter: " + text);
        return std::stoull(parts[i]);
    };

    SetFamilySpec spec;
    spec.tag = text;
    const std::string& kind = parts[0];
    if (kind == "random") {
        spec.kind = SetFamily::Random;
        spec.n = num(1);
    } else if (kind == "interval") {
        spec.kind = SetFamily::Interval;
        spec.start = num(1);
        spec.n = num(2);
    } else if (kind == "geometric") {
        spec.kind = SetFamily::Geometric;
        spec.start = num(1);
        spec.ratio = num(2);
        spec.n = num(3);
    } else if (kind == "subgroup") {
        spec.kind = SetFamily::Subgroup;
        spec.order = num(1);
    } else if (kind == "explicit") {
        if (parts.size() < 2) throw std::invalid_argument("explicit set needs a path");
        spec.kind = SetFamily::Explicit;
        // path may itself contain ':'; rejoin the remainder
        std::string path = parts[1];
        for (std::size_t i = 2; i < parts.size(); ++i) path += ":" + parts[i];
        std::ifstream file(path);
        if (!file) throw std::invalid_argument("cannot open set file: " + path);
        std::string line;
        while (std::getline(file, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            u64 v;
            while (ls >> v) spec.explicit_elements.push_back(v);
        }
        spec.n = spec.explicit_elements.size();
    } else {
        throw std::invalid_argument("unknown set family: " + kind);
    }
    return spec;
}

SetFamilySpec SetFamilySpec::with_seed(u64 s) const {
    SetFamilySpec out = *this;
    out.seed = s;
    return out;
}

SetFamilySpec SetFamilySpec::with_size(u64 size) const {
    SetFamilySpec out = *this;
    out.n = size;
    switch (kind) {
        case SetFamily::Random:
            out.tag = "random:" + std::to_string(size);
            break;
        case SetFamily::Interval:
            out.tag = "interval:" + std::to_string(start) + ":" + std::to_string(size);
            break;
        case SetFamily::Geometric:
            out.tag = "geometric:" + std::to_string(start) + ":" + std::to_string(ratio) +
                      ":" + std::to_string(size);
            break;
        default:
            throw std::invalid_argument("family does not take a size parameter");
    }
    return out;
}

FSet generate(const SetFamilySpec& spec, const PrimeField& field) {
    const u64 p = field.modulus();
    switch (spec.kind) {
        case SetFamily::Random: {
            if (spec.n > p - 1) throw std::invalid_argument("random set larger than F_p^*");
            std::mt19937_64 rng(spec.seed);
            return FSet(field, sample_without_replacement(1, p - 1, spec.n, rng));
        }
        case SetFamily::Interval: {
            if (spec.n > p) throw std::invalid_argument("interval larger than F_p");
            if (spec.start >= p) throw std::invalid_argument("interval start out of range");
            std::vector<u64> vals(spec.n);
            for (u64 i = 0; i < spec.n; ++i) vals[i] = (spec.start + i) % p;
            return FSet(field, std::move(vals));
        }
        case SetFamily::Geometric: {
            if (spec.start == 0 || spec.start >= p || spec.ratio == 0 || spec.ratio >= p)
                throw std::invalid_argument("geometric start/ratio must be nonzero residues");
            std::vector<u64> vals;
            vals.reserve(spec.n);
            u64 cur = spec.start;
            for (u64 i = 0; i < spec.n; ++i) {
                vals.push_back(cur);
                cur = field.mul(cur, spec.ratio);
            }
            FSet out(field, std::move(vals));
            if (out.size() != spec.n)
                throw std::invalid_argument("geometric progression repeats before reaching n");
            return out;
        }
        case SetFamily::Subgroup: {
            if (spec.order == 0 || (p - 1) % spec.order != 0)
                throw std::invalid_argument("subgroup order must divide p-1");
            u64 gen = field.pow(primitive_root(field), (p - 1) / spec.order);
            std::vector<u64> vals;
            vals.reserve(spec.order);
            u64 cur = 1;
            for (u64 i = 0; i < spec.order; ++i) {
                vals.push_back(cur);
                cur = field.mul(cur, gen);
            }
            return FSet(field, std::move(vals));
        }
        case SetFamily::Explicit:
            return FSet(field, spec.explicit_elements);
    }
    throw std::logic_error("unreachable");
}

std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

u64 primitive_root(const PrimeField& field) {
    const u64 p = field.modulus();
    auto factors = prime_factors(p - 1);
    for (u64 g = 2; g < p; ++g) {
        bool ok = true;
        for (u64 q : factors) {
            if (field.pow(g, (p - 1) / q) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw std::logic_error("no primitive root found");  // impossible for prime p
}

}  // namespace expander
