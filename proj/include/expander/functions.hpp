#pragma once

#include <string>
#include <vector>

#include "expander/sets.hpp"

namespace expander {

/// Which composed set a statement pairs with f(A,B): B*C or B+C.
enum class Variant { Multiplicative, Additive };

inline const char* variant_name(Variant v) {
    return v == Variant::Multiplicative ? "mult" : "add";
}

/// Explicit map from a domain inside F_p^* into F_p^*, stored as a value
/// vector aligned with the (sorted) domain. Built-in families are just
/// constructors; the table is the universal representation.
///
/// constant(0) is admitted as an extended family for h: its values leave
/// F_p^*, so mu() and pointwise_product() reject tables containing zero,
/// which is exactly the multiplicative-variant path.
class FunctionTable {
public:
    static FunctionTable identity(const FSet& domain);
    static FunctionTable constant(const FSet& domain, u64 c);
    static FunctionTable inverse(const FSet& domain);
    static FunctionTable monomial(const FSet& domain, i64 k);
    static FunctionTable explicit_table(const FSet& domain, std::vector<u64> values,
                                        std::string tag = "explicit");

    const FSet& domain() const { return domain_; }
    const PrimeField& field() const { return domain_.field(); }
    const std::vector<u64>& values() const { return values_; }
    const std::string& family_tag() const { return tag_; }
    bool has_zero_value() const { return has_zero_; }

    /// Value at a domain point; throws std::domain_error if x is not in the domain.
    u64 value_at(u64 x) const;

    bool operator==(const FunctionTable& other) const {
        return domain_ == other.domain_ && values_ == other.values_;
    }

private:
    FunctionTable(FSet domain, std::vector<u64> values, std::string tag, bool allow_zero);

    FSet domain_;
    std::vector<u64> values_;
    std::string tag_;
    bool has_zero_ = false;
};

/// Maximum fiber size over nonzero targets. Throws std::domain_error on an
/// empty domain or a table with zero values (no fiber statistic applies).
u64 mu(const FunctionTable& t);

/// x -> g(x) * h(x) on the common domain. Throws std::invalid_argument on a
/// domain mismatch or when the product leaves F_p^* (h with zero values).
FunctionTable pointwise_product(const FunctionTable& g, const FunctionTable& h);

/// The pair (g, h) defining f(x, y) = g(x) * (h(x) + y); domains must match.
struct ExpanderSpec {
    ExpanderSpec(FunctionTable g_table, FunctionTable h_table);

    const FSet& domain() const { return g.domain(); }
    const PrimeField& field() const { return g.field(); }

    FunctionTable g;
    FunctionTable h;
};

/// f(a, b) = g(a) * (h(a) + b). The result may be 0 (when b = -h(a)).
u64 eval_f(const ExpanderSpec& spec, u64 a, u64 b);

/// f(A, B) = { f(a, b) : a in A, b in B } as a canonical set.
FSet image_f(const ExpanderSpec& spec, const FSet& A, const FSet& B);

/// Parses "identity", "constant:<c>", "inverse", "monomial:<k>" or
/// "explicit:<path>" (two-column CSV x,value). Explicit tables define their
/// own domain; every other family is built on `domain`.
FunctionTable parse_function_family(const std::string& text, const PrimeField& field,
                                    const FSet& domain);

}  // namespace expander
