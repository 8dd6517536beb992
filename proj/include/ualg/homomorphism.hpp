#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ualg/algebra.hpp"

namespace ualg {

/// A total map between carriers that preserves every operation table.
struct Homomorphism {
    FiniteAlgebra dom;
    FiniteAlgebra cod;
    std::vector<Element> map;

    Element operator()(Element e) const { return map.at(e); }
    bool injective() const;
    bool surjective() const;
    Subset image() const;
};

/// First place where a candidate map fails to commute with a table.
struct HomViolation {
    std::size_t symbol;
    std::vector<Element> args;
};

struct HomCheck {
    bool ok = true;
    std::optional<HomViolation> violation;

    explicit operator bool() const { return ok; }
};

HomCheck is_homomorphism(std::span<const Element> map, const FiniteAlgebra& dom, const FiniteAlgebra& cod);

/// Partial map from dom to cod; nullopt marks unmapped elements.
using PartialMap = std::vector<std::optional<Element>>;

/// Extends `seed` to the subalgebra generated by its domain by pushing images
/// through the tables. Returns nullopt when two derivations of one element
/// disagree, i.e. when no homomorphism agrees with `seed`.
std::optional<PartialMap> propagate_images(const FiniteAlgebra& dom, const FiniteAlgebra& cod, PartialMap seed);

/// All homomorphisms, by backtracking over images of a minimal generating set
/// with closure propagation. Ordered lexicographically by generator images.
std::vector<Homomorphism> enumerate_homs(const FiniteAlgebra& dom, const FiniteAlgebra& cod);

Homomorphism identity_hom(const FiniteAlgebra& alg);
Homomorphism compose(const Homomorphism& first, const Homomorphism& second);

/// "a->b c->d" using the carriers' labels.
std::string format_map(const FiniteAlgebra& dom, const FiniteAlgebra& cod, std::span<const Element> map);

} // namespace ualg
