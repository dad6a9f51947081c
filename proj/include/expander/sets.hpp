#pragma once

#include <span>
#include <string>
#include <vector>

#include "expander/field.hpp"

namespace expander {

/// Canonical subset of F_p: strictly increasing, duplicate-free element
/// vector. Equality is structural (same modulus, same elements). Immutable
/// after construction.
class FSet {
public:
    FSet(const PrimeField& field, std::vector<u64> elements);

    const PrimeField& field() const { return field_; }
    u64 modulus() const { return field_.modulus(); }
    const std::vector<u64>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    bool empty() const { return elements_.empty(); }
    bool contains(u64 x) const;

    /// True when 0 is not an element (the set lies in F_p^*).
    bool is_star() const { return elements_.empty() || elements_.front() != 0; }

    bool operator==(const FSet& other) const {
        return field_ == other.field_ && elements_ == other.elements_;
    }

private:
    PrimeField field_;
    std::vector<u64> elements_;
};

FSet sumset(const FSet& A, const FSet& B);
FSet productset(const FSet& A, const FSet& B);

/// {1, ..., p-1} as an FSet; the usual domain for function tables.
FSet fstar(const PrimeField& field);

/// True iff |X|^8 <= p^5, evaluated exactly in integer arithmetic.
bool below_p58(u64 size, u64 p);

/// The smallness hypothesis: every set satisfies |X|^8 <= p^5.
bool hypothesis_gate(std::span<const FSet* const> sets, const PrimeField& field);
bool hypothesis_gate(std::initializer_list<const FSet*> sets, const PrimeField& field);

enum class SetFamily { Random, Interval, Geometric, Subgroup, Explicit };

/// Recipe for one experiment set. `generate` is deterministic in the full
/// spec contents (including seed for the random family).
struct SetFamilySpec {
    SetFamily kind = SetFamily::Random;
    u64 n = 0;       // size (random / interval / geometric)
    u64 seed = 0;    // random
    u64 start = 0;   // interval / geometric
    u64 ratio = 0;   // geometric
    u64 order = 0;   // subgroup order d, must divide p-1
    std::vector<u64> explicit_elements;
    std::string tag;

    /// Parses "random:<n>", "interval:<start>:<n>", "geometric:<start>:<ratio>:<n>",
    /// "subgroup:<d>" or "explicit:<path>" (one element per line, '#' comments).
    static SetFamilySpec parse(const std::string& text);

    SetFamilySpec with_seed(u64 s) const;
    SetFamilySpec with_size(u64 size) const;
};

FSet generate(const SetFamilySpec& spec, const PrimeField& field);

/// Distinct prime factors of n by trial division, ascending.
std::vector<u64> prime_factors(u64 n);

/// Smallest primitive root mod p, found by testing g = 2, 3, ... against
/// g^((p-1)/q) != 1 for every prime q | p-1.
u64 primitive_root(const PrimeField& field);

}  // namespace expander
