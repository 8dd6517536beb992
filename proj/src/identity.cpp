#include "ualg/identity.hpp"

#include <set>

namespace ualg {

std::vector<std::string> Identity::variables() const {
    std::set<std::string> vars;
    lhs.collect_generators(vars);
    rhs.collect_generators(vars);
    return {vars.begin(), vars.end()};
}

std::string print_identity(const Identity& id) { return print_term(id.lhs) + " = " + print_term(id.rhs); }

IdentityCheck check_identity(const FiniteAlgebra& alg, const Identity& id) {
    auto vars = id.variables();
    std::optional<Assignment> bad;
    for_each_tuple(vars.size(), alg.size(), [&](std::span<const Element> values) {
        if (bad) {
            return;
        }
        Assignment asg;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            asg[vars[i]] = values[i];
        }
        if (eval_term(id.lhs, alg, asg) != eval_term(id.rhs, alg, asg)) {
            bad = std::move(asg);
        }
    });
    if (bad) {
        return IdentityCheck{false, std::move(bad)};
    }
    return IdentityCheck{};
}

std::optional<std::size_t> first_failing_identity(const FiniteAlgebra& alg, const std::vector<Identity>& ids) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (!check_identity(alg, ids[i])) {
            return i;
        }
    }
    return std::nullopt;
}

} // namespace ualg
