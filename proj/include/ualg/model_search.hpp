#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/identity.hpp"

namespace ualg {

struct ModelSearchOptions {
    /// Keep one model per isomorphism class and break element symmetry.
    bool prune_iso = true;
    /// Maximum number of search decisions before giving up.
    std::uint64_t node_cap = 50'000'000;
};

struct ModelSearchStats {
    std::uint64_t decisions = 0;
    std::uint64_t conflicts = 0;
    std::uint64_t complete_tables = 0;
};

/// All algebras on {0, ..., size-1} satisfying every identity.
///
/// Table cells are filled constants first, then in shells of increasing
/// largest argument; identity instances are watched and checked as soon as
/// the cells they read are filled, and an instance whose only missing cell is
/// at the root forces that cell. Results come in discovery order.
std::vector<FiniteAlgebra> enumerate_models(const Signature& sig, const std::vector<Identity>& identities,
                                            std::size_t size, const ModelSearchOptions& options = {},
                                            ModelSearchStats* stats = nullptr);

/// Relabeling-invariant table encoding.
struct CanonicalForm {
    std::vector<Element> code;
    /// position[e] is e's index in the canonical labeling.
    std::vector<Element> position;

    bool operator==(const CanonicalForm& other) const { return code == other.code; }
};

/// Colour refinement on table occurrences, then individualization and
/// refinement over the remaining ties; the least encoding wins.
CanonicalForm canonical_form(const FiniteAlgebra& alg);

bool are_isomorphic(const FiniteAlgebra& a, const FiniteAlgebra& b);

/// Direct search for a bijective homomorphism, independent of canonical forms.
std::optional<std::vector<Element>> find_isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b);

} // namespace ualg
