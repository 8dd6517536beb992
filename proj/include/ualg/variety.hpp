#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/identity.hpp"
#include "ualg/model_search.hpp"

namespace ualg {

/// An equational class, optionally with finite algebras generating it.
struct Variety {
    Signature sig;
    std::vector<Identity> identities;
    std::vector<FiniteAlgebra> generating_algebras;
    std::string name;

    bool contains(const FiniteAlgebra& alg) const;
    bool has_generating_algebras() const { return !generating_algebras.empty(); }
};

/// Validates that every generating algebra has the signature and satisfies
/// the identities; throws InputError otherwise.
Variety make_variety(Signature sig, std::vector<Identity> identities, std::vector<FiniteAlgebra> generating,
                     std::string name = {});

inline constexpr std::size_t kDefaultFreeCap = 1024;

/// Free algebra of the variety on named generators, realized inside a power
/// of the generating algebras.
struct FreeAlgebra {
    FiniteAlgebra algebra;
    std::vector<std::string> generators;
    std::vector<Element> generator_elements;
    /// Lowest-height term for each element; also used as its label.
    std::vector<Term> representatives;
    /// Coordinates ordered by generating algebra, then by assignment with
    /// the first generator most significant.
    std::vector<std::vector<Element>> vectors;
    /// Two generators coincide in every generating algebra.
    bool generators_collapse = false;
};

FreeAlgebra free_algebra(const Variety& v, const std::vector<std::string>& generators,
                         std::size_t cap = kDefaultFreeCap);

/// Generators named x1, ..., xk.
FreeAlgebra free_algebra(const Variety& v, std::size_t k, std::size_t cap = kDefaultFreeCap);

/// The identity w = w2 holds in every generating algebra.
bool factor_class_equal(const Variety& v, const Term& w, const Term& w2);

/// w and w2 evaluate equally under `gens`, which must generate `alg`.
bool kernel_related(const FiniteAlgebra& alg, const GeneratorMap& gens, const Term& w, const Term& w2);

/// One class of terms modulo the variety, split by whether the term uses the
/// marked generator.
struct TermClass {
    Term representative;
    std::vector<Element> vector;
    bool marked = false;
};

/// Classes reachable by terms of height at most `depth`, each with a
/// lowest-height representative, in level order. Pass an empty `marked` to
/// ignore marking.
std::vector<TermClass> enumerate_classes(const Variety& v, const std::vector<std::string>& generators,
                                         unsigned depth, const std::string& marked = {},
                                         std::size_t cap = 100'000);

/// Meet semilattices (idempotent, commutative, associative meet), generated
/// by the two-element chain "sl2".
Variety semilattice_variety();

/// Members of size 1..max_size up to isomorphism, ordered by size. A member
/// isomorphic to one of `preferred` is replaced by that algebra; the rest are
/// named m<size>.<k>. Results are cached per variety and size.
std::vector<FiniteAlgebra> variety_members(const Variety& v, std::size_t max_size,
                                           const std::vector<FiniteAlgebra>& preferred = {},
                                           const ModelSearchOptions& options = {});

} // namespace ualg
