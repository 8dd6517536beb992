#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/extension.hpp"
#include "ualg/variety.hpp"

namespace ualg {

/// and/2 or/2 not/1 zero/0 one/0
Signature boolean_signature();

/// Boolean algebra axioms, with some consequences added because they make
/// the model search prune earlier.
std::vector<Identity> boolean_identities();

/// All subsets of {1, ..., atoms}. Element i is the subset with bit j set
/// iff atom j+1 belongs to it; labels look like "{1,3}" and "{}".
FiniteAlgebra powerset_algebra(unsigned atoms, std::string name = {});

/// Boolean algebras, generated by the two-element algebra "ba2".
Variety boolean_variety();

/// The powerset order, read off the meet table: a <= b iff a and b = a.
bool boolean_leq(const FiniteAlgebra& alg, Element a, Element b);

/// (a and not b) or (not a and b)
Element symmetric_difference(const FiniteAlgebra& alg, Element a, Element b);

struct Lemma2Sides {
    bool lhs;
    bool rhs;
};

/// lhs: a and b = a and c; rhs: a <= not(b delta c).
Lemma2Sides lemma2_check(const FiniteAlgebra& alg, Element a, Element b, Element c);

/// t = (x and b) or (not x and c).
struct Dnf {
    Element b;
    Element c;
};

/// Coefficients of t as a function of x: its values at x = one and x = zero.
Dnf dnf_normalize(const Term& t, const FiniteAlgebra& alg, const GeneratorMap& base_map);

/// Families of lower and upper bounds for x, each remembering the condition
/// it came from.
struct BoundsPair {
    std::vector<Element> lower;
    std::vector<Element> upper;
    std::vector<std::size_t> lower_origin;
    std::vector<std::size_t> upper_origin;

    /// Join of the lower family (zero when empty).
    Element sup_lower(const FiniteAlgebra& alg) const;
    /// Meet of the upper family (one when empty).
    Element inf_upper(const FiniteAlgebra& alg) const;
    bool admits(const FiniteAlgebra& alg, Element a) const;
};

/// Adds the bounds (k delta m)' from above and (l delta n) from below, where
/// the sides normalize to (k, l) and (m, n).
void add_condition_bounds(BoundsPair& bp, const ExtensionCondition& c, const FiniteAlgebra& alg,
                          const GeneratorMap& base_map, std::size_t origin);

BoundsPair condition_to_bounds(const ExtensionCondition& c, const FiniteAlgebra& alg, const GeneratorMap& base_map);

BoundsPair bounds_of(const std::vector<ExtensionCondition>& conds, const FiniteAlgebra& alg,
                     const GeneratorMap& base_map);

/// The join of the lower bounds. Throws InputError when it is not below the
/// meet of the upper bounds.
Element sup_witness(const BoundsPair& bp, const FiniteAlgebra& alg);

/// A finite or cofinite set of natural numbers.
struct FiniteCofinite {
    /// The set itself, or its complement when `cofinite` is set.
    std::set<std::uint64_t> support;
    bool cofinite = false;

    bool contains(std::uint64_t n) const { return (support.count(n) != 0) != cofinite; }
    std::string to_string() const;
};

/// Why a candidate is not the least upper bound of E_k = {0, 2, ..., 2k}.
struct FcRefutation {
    enum class Kind { NotUpperBound, NotLeast };
    Kind kind;
    /// NotUpperBound: the least k with E_k not inside the candidate.
    std::uint64_t k = 0;
    /// NotLeast: a strictly smaller upper bound.
    std::optional<FiniteCofinite> smaller;
};

/// A finite candidate misses some even number; a cofinite one either
/// excludes an even number or loses its least odd member and stays an upper
/// bound.
FcRefutation fc_no_sup_demo(const FiniteCofinite& candidate);

std::string format_refutation(const FcRefutation& r);

} // namespace ualg
