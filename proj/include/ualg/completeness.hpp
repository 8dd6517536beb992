#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/extension.hpp"
#include "ualg/variety.hpp"

namespace ualg {

struct CheckStats {
    std::size_t members = 0;
    std::size_t subalgebras = 0;
    std::size_t realized_extensions = 0;
    std::size_t constructed_extensions = 0;
    /// Homomorphisms from subalgebras of members into B.
    std::size_t homomorphisms = 0;
    std::size_t candidates = 0;
    /// Candidates passing the bounded conditions but admitting no
    /// homomorphism.
    std::size_t depth_gaps = 0;
    /// Constructions abandoned at the free algebra cap.
    std::size_t skipped = 0;
};

/// A subalgebra of B with an extension whose conditions no element of B
/// meets.
struct CompletenessWitness {
    Subset sub;
    SimpleExtension extension;
    /// A0 to the elements of `sub`.
    GeneratorMap base_map;
    ConditionSet conditions;
    /// Where the extension came from, e.g. "subalgebra of m4.1".
    std::string origin;
    /// For each element b of B, the first condition it violates; nullopt
    /// when b meets every listed condition but no homomorphism exists.
    std::vector<std::optional<std::size_t>> violated;
};

/// A homomorphism g from a subalgebra A of a member A1 into B with no
/// extension to A1, and the step of the adjoining chain where every choice
/// ran out.
struct InjectivityWitness {
    FiniteAlgebra member;
    Subset sub;
    /// g, indexed by position in `sub`.
    std::vector<Element> hom;
    Subset step_base;
    Element step_elem = 0;
    /// The partial homomorphism on step_base, indexed by position.
    std::vector<Element> step_map;
};

struct CompletenessVerdict {
    bool passed = true;
    std::optional<CompletenessWitness> witness;
    CheckStats stats;
};

struct InjectivityVerdict {
    bool passed = true;
    std::optional<InjectivityWitness> witness;
    CheckStats stats;
};

struct CheckOptions {
    std::size_t size_bound = 4;
    unsigned depth = 2;
    std::size_t free_cap = kDefaultFreeCap;
    ModelSearchOptions search;
};

/// Every subalgebra of B and every extension of it realized inside a
/// variety member of size at most the bound, or produced by prop2_construct
/// from such a member, must be met by some element of B: the element has to
/// pass the bounded conditions and extend to a homomorphism.
CompletenessVerdict is_complete_upto(const FiniteAlgebra& b, const Variety& v, const CheckOptions& options);

/// Every homomorphism from a subalgebra of a member of size at most the
/// bound into B extends to the whole member, searched along the chain that
/// adjoins the least missing element at each step.
InjectivityVerdict is_injective_upto(const FiniteAlgebra& b, const Variety& v, const CheckOptions& options);

/// The base homomorphism of the witness extension is the injectivity
/// witness; the failing step is the extension itself.
InjectivityWitness to_injectivity_witness(const CompletenessWitness& w, const FiniteAlgebra& b);

/// prop2_construct on the failing step yields an extension of g's image
/// that B cannot meet.
CompletenessWitness to_completeness_witness(const InjectivityWitness& w, const FiniteAlgebra& b, const Variety& v,
                                            unsigned depth, std::size_t free_cap = kDefaultFreeCap);

/// Recomputes the failure with extension primitives: conditions hold in the
/// ambient algebra and every element of B misses them or has no
/// homomorphism.
bool replay(const CompletenessWitness& w, const FiniteAlgebra& b);

/// Recomputes the failure: g is a homomorphism, no homomorphism from the
/// member restricts to it, and no element extends the failing step.
bool replay(const InjectivityWitness& w, const FiniteAlgebra& b);

struct CrosscheckReport {
    CompletenessVerdict complete;
    InjectivityVerdict injective;
    bool agree = false;
    /// Both witnesses convert and the conversions replay; vacuous on a pass.
    bool witnesses_convert = true;
    /// On disagreement, both checkers rerun with larger bounds.
    std::optional<CheckOptions> rerun_options;
    std::optional<bool> rerun_complete;
    std::optional<bool> rerun_injective;
};

CrosscheckReport crosscheck_prop3(const FiniteAlgebra& b, const Variety& v, const CheckOptions& options);

} // namespace ualg
