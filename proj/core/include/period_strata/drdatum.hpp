#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace period_strata {

using OmegaMap = std::map<int, int>;
using DeltaMap = std::map<std::pair<int, int>, int>;

enum class Condition {
    support,     // Omega finitely supported with nonnegative values
    diagonal,    // Delta(i,j) = 0 for i >= j
    step,        // min(Omega(i),1) <= Delta(i,i+1) <= Omega(i)
    triangle,    // max(D(i,j),D(j,k)) <= D(i,k) <= D(i,j)+D(j,k)
    extension,   // value outside [L, U+1] differs from the clamped one
    negative,    // negative Delta value
};

std::string condition_label(Condition c);
// "i" .. "iv" for the four axioms, empty for the other checks
std::string condition_number(Condition c);

struct Violation {
    Condition condition;
    std::vector<int> witness;
    std::string message;
};

class DeRhamDatum;

struct ValidationResult;

// A pair (Omega, Delta). Only Delta on the window [L, U+1] is stored; other
// pairs are read through the clamp rule. The default value is the zero datum.
class DeRhamDatum {
public:
    DeRhamDatum() = default;

    // Missing Delta keys inside the window read as 0, missing keys outside
    // it read as their clamped value.
    static ValidationResult validate(const OmegaMap& omega, const DeltaMap& delta);
    // throws std::invalid_argument listing the violations
    static DeRhamDatum make(const OmegaMap& omega, const DeltaMap& delta);

    bool is_zero() const { return omega_.empty(); }
    std::optional<int> lower() const;
    std::optional<int> upper() const;

    int omega(int w) const;
    int delta(int i, int j) const;

    OmegaMap omega_map() const;
    // nonzero entries on the window
    DeltaMap delta_map() const;

    friend bool operator==(const DeRhamDatum&, const DeRhamDatum&) = default;

private:
    size_t index(int i, int j) const;

    int lo_ = 0;
    std::vector<int> omega_;  // weights lo_ .. lo_ + size - 1
    std::vector<int> delta_;  // pairs lo_ <= i < j <= lo_ + size

    friend struct DatumBuilder;
};

struct ValidationResult {
    std::optional<DeRhamDatum> datum;
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};


struct Classification {
    bool full = false;
    bool hodge_tate = false;
    bool sen = false;
};

Classification classify(const DeRhamDatum& d);

enum class AssociatedKind { hodge_tate, sen };
DeRhamDatum associated(const DeRhamDatum& d, AssociatedKind kind);

struct Dimensions {
    int sd = 0, htd = 0, drd = 0;
    friend bool operator==(const Dimensions&, const Dimensions&) = default;
};

Dimensions dimensions(const DeRhamDatum& d);
int htd_range(const DeRhamDatum& d, int k, int l);

DeRhamDatum twist(const DeRhamDatum& d, int n);
DeRhamDatum truncate(const DeRhamDatum& d, int i, int j);

enum class Order { eq, lt, gt, incomparable };
std::string order_label(Order o);

struct Comparison {
    Order order;
    // set when an interval was given: d < d' with supp(d') inside it
    std::optional<bool> strictly_below_in_interval;
};

Comparison compare(const DeRhamDatum& a, const DeRhamDatum& b,
                   std::optional<std::pair<int, int>> interval = std::nullopt);
bool leq(const DeRhamDatum& a, const DeRhamDatum& b);
// support of the datum inside [i, j]
bool supported_in(const DeRhamDatum& d, int i, int j);

// Minimal data strictly above d with support in [i, j], in canonical order.
std::vector<DeRhamDatum> min_covers(const DeRhamDatum& d, int i, int j);

// canonical order: Omega pairs, then nonzero Delta triples
bool canonical_less(const DeRhamDatum& a, const DeRhamDatum& b);

std::string to_literal(const DeRhamDatum& d);
// throws ParseError on syntax errors, std::invalid_argument when the parsed
// maps do not form a datum
DeRhamDatum parse_literal(std::string_view text);
// syntax only, for reporting violations of a literal
std::pair<OmegaMap, DeltaMap> parse_literal_maps(std::string_view text);

}  // namespace period_strata
