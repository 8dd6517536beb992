#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/homomorphism.hpp"
#include "ualg/term.hpp"
#include "ualg/variety.hpp"

namespace ualg {

/// Name of the variable standing for the adjoined element.
inline const std::string kExtensionVariable = "x";

/// A(A0) together with an element a of an ambient algebra generated by
/// A0 and a. The element may already lie in A.
struct SimpleExtension {
    FiniteAlgebra ambient;
    GeneratorMap base_gens;
    Element ext_elem;
    /// The base subalgebra A, generated by base_gens.
    Subset base;

    Subalgebra base_algebra() const { return restrict(ambient, base); }
    /// base_gens plus x bound to ext_elem.
    Assignment assignment() const;
    std::vector<std::string> generator_names() const;
};

/// Validates generator names and that A0 together with a generates the
/// ambient algebra.
SimpleExtension make_extension(FiniteAlgebra ambient, GeneratorMap base_gens, Element ext_elem);

/// The extension of a subalgebra `sub` of `alg` by `a`, realized on the
/// subalgebra generated by sub and a. A0 is the minimal generating set of
/// sub, named g0, g1, ...
SimpleExtension realize_extension(const FiniteAlgebra& alg, const Subset& sub, Element a, std::string name = {});

struct ExtensionCondition {
    Term lhs;
    Term rhs;

    bool operator==(const ExtensionCondition&) const = default;
};

std::string print_condition(const ExtensionCondition& c);

bool condition_holds(const SimpleExtension& ext, const ExtensionCondition& c);

/// Every pair of terms of height at most `depth` over A0 and x that holds in
/// the ambient algebra and mentions x on some side. Pairs are ordered by the
/// canonical term order of their sides; (w, w) and mirrored pairs are left
/// out.
std::vector<ExtensionCondition> enumerate_conditions(const SimpleExtension& ext, unsigned depth,
                                                     std::size_t cap = kDefaultTermCap);

/// Conditions modulo a variety: one representative per class of terms of
/// height at most `depth`, split by whether x occurs, and every pair of
/// representatives that the ambient algebra identifies. For targets in the
/// variety this is equivalent to the full list.
struct ConditionSet {
    std::vector<std::string> generators;
    std::vector<Term> terms;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;

    std::size_t size() const { return pairs.size(); }
    ExtensionCondition condition(std::size_t k) const { return {terms[pairs[k].first], terms[pairs[k].second]}; }
    std::vector<ExtensionCondition> conditions() const;
};

ConditionSet enumerate_condition_set(const Variety& v, const SimpleExtension& ext, unsigned depth,
                                     std::size_t cap = 100'000);
/// Same, from classes already enumerated over ext's generator names.
ConditionSet enumerate_condition_set(const std::vector<TermClass>& classes, const SimpleExtension& ext);

struct Satisfaction {
    bool ok = true;
    /// Index of the first violated condition.
    std::optional<std::size_t> violated;

    explicit operator bool() const { return ok; }
};

/// Evaluates each condition in `target` under base_map plus x bound to b.
Satisfaction satisfies_conditions(const FiniteAlgebra& target, const GeneratorMap& base_map, Element b,
                                  const std::vector<ExtensionCondition>& conds);
Satisfaction satisfies_conditions(const FiniteAlgebra& target, const GeneratorMap& base_map, Element b,
                                  const ConditionSet& conds);

/// The homomorphism from the ambient algebra sending A0 along base_map and
/// a to b, if one exists. Throws InputError when base_map does not extend to
/// a homomorphism on A.
std::optional<Homomorphism> extends_to_hom(const SimpleExtension& ext, const FiniteAlgebra& target,
                                           const GeneratorMap& base_map, Element b);

/// Renames generators of terms over A0 and x.
struct TransportMap {
    Binding binding;

    Term operator()(const Term& t) const { return substitute(t, binding); }
    ExtensionCondition operator()(const ExtensionCondition& c) const { return {(*this)(c.lhs), (*this)(c.rhs)}; }
};

/// Generators of the image B = g(A): each distinct image of an A0 generator,
/// named after the first A0 generator reaching it. `g` is indexed by the
/// elements of A in the order of ext.base.
GeneratorMap image_generators(const SimpleExtension& ext, const Homomorphism& g);

/// A0 names to image_generators names, x to x.
TransportMap transport_map(const SimpleExtension& ext, const Homomorphism& g);

struct Prop1Result {
    bool holds = true;
    /// First transported condition failing at b.
    std::optional<ExtensionCondition> violated;
};

/// Transports every condition along g and checks it at b in g's codomain.
/// g must have the base subalgebra of ext as its domain.
Prop1Result prop1_check(const SimpleExtension& ext, const Homomorphism& g, Element b, unsigned depth);
Prop1Result prop1_check(const Variety& v, const SimpleExtension& ext, const Homomorphism& g, Element b,
                        unsigned depth);

/// B extended by a new x subject exactly to the conditions transported from
/// the ambient algebra of ext along g.
struct Prop2Result {
    FiniteAlgebra algebra;
    /// Elements of B = g(A) inside g's codomain, ascending.
    Subset image;
    /// embedding[i] is the element of `algebra` representing image[i].
    std::vector<Element> embedding;
    /// Image generators, bound to their elements of `algebra`.
    GeneratorMap base_gens;
    Element x;
    std::size_t free_size = 0;

    SimpleExtension as_extension() const;
};

/// Quotient of the free algebra over the image generators and x by the
/// congruence generated by the transported table relations of the ambient
/// algebra and the kernel of g. Audits that B embeds.
Prop2Result prop2_construct(const Variety& v, const SimpleExtension& ext, const Homomorphism& g,
                            std::size_t cap = kDefaultFreeCap);
/// Same, reusing a free algebra whose generators are the image generator
/// names followed by x.
Prop2Result prop2_construct(const SimpleExtension& ext, const Homomorphism& g, const FreeAlgebra& free);

struct Lemma1Result {
    bool ok = true;
    std::size_t checked = 0;
    std::optional<Term> counterexample;
};

/// For h: S -> target, renames every generator s to a generator standing for
/// h(s) and checks that evaluating the renamed term with those generators
/// bound to themselves agrees with evaluating the original under h. The
/// target is replaced by the subalgebra generated by h(S). The variety form
/// ranges over one representative per class of terms; the other over all
/// terms.
Lemma1Result lemma1_audit(const Variety& v, const GeneratorMap& h, const FiniteAlgebra& target, unsigned depth);
Lemma1Result lemma1_audit(const GeneratorMap& h, const FiniteAlgebra& target, unsigned depth,
                          std::size_t cap = kDefaultTermCap);

} // namespace ualg
