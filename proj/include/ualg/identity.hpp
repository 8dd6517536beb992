#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/term.hpp"

namespace ualg {

/// An equation lhs = rhs over variable generators.
struct Identity {
    Term lhs;
    Term rhs;

    std::vector<std::string> variables() const;
};

std::string print_identity(const Identity& id);

struct IdentityCheck {
    bool holds = true;
    /// A variable assignment separating the two sides, when one exists.
    std::optional<Assignment> counterexample;

    explicit operator bool() const { return holds; }
};

/// Evaluates both sides under every assignment of the variables, in
/// lexicographic order with the first variable most significant.
IdentityCheck check_identity(const FiniteAlgebra& alg, const Identity& id);

/// First identity (by index) that fails in `alg`, if any.
std::optional<std::size_t> first_failing_identity(const FiniteAlgebra& alg, const std::vector<Identity>& ids);

} // namespace ualg
