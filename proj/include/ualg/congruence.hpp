#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/homomorphism.hpp"

namespace ualg {

using ElementPair = std::pair<Element, Element>;

/// Compatible equivalence relation on a finite algebra, stored as a block
/// index per element. Blocks are numbered by their least element.
class Congruence {
public:
    /// Validates that `block_of` is a partition compatible with every table.
    Congruence(FiniteAlgebra alg, std::vector<std::size_t> block_of);

    static Congruence identity(const FiniteAlgebra& alg);

    const FiniteAlgebra& algebra() const { return alg_; }
    std::size_t block_count() const { return blocks_.size(); }
    std::size_t block_of(Element e) const { return block_of_.at(e); }
    const std::vector<Subset>& blocks() const { return blocks_; }
    bool related(Element a, Element b) const { return block_of_.at(a) == block_of_.at(b); }

    bool operator==(const Congruence& other) const { return block_of_ == other.block_of_; }

private:
    FiniteAlgebra alg_;
    std::vector<std::size_t> block_of_;
    std::vector<Subset> blocks_;
};

/// True when the partition given by `block_of` respects every table.
bool is_compatible(const FiniteAlgebra& alg, std::span<const std::size_t> block_of);

/// Least congruence containing `pairs`: union-find merges, re-scanning the
/// tables after every merge round until nothing changes.
Congruence congruence_generated(const FiniteAlgebra& alg, std::span<const ElementPair> pairs);

struct Quotient {
    FiniteAlgebra algebra;
    Homomorphism projection;
};

/// Algebra of blocks, each labelled by its least element's label.
Quotient quotient(const Congruence& c);

/// Partition induced by a map (its kernel), in the same block numbering.
std::vector<std::size_t> kernel_partition(std::span<const Element> map);

} // namespace ualg
