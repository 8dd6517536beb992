#include "ualg/boolean.hpp"

#include <set>

#include "ualg/error.hpp"

namespace ualg {

namespace {

enum : std::size_t { kAnd, kOr, kNot, kZero, kOne };

std::size_t symbol(const FiniteAlgebra& alg, const char* name) { return alg.signature().index_of(name); }

Element op2(const FiniteAlgebra& alg, const char* name, Element a, Element b) {
    Element args[2] = {a, b};
    return alg.apply(symbol(alg, name), args);
}

Element complement(const FiniteAlgebra& alg, Element a) {
    Element args[1] = {a};
    return alg.apply(symbol(alg, "not"), args);
}

Element top(const FiniteAlgebra& alg) { return alg.constant(symbol(alg, "one")); }
Element bottom(const FiniteAlgebra& alg) { return alg.constant(symbol(alg, "zero")); }

} // namespace

Signature boolean_signature() { return Signature::parse("and/2 or/2 not/1 zero/0 one/0"); }

std::vector<Identity> boolean_identities() {
    static const char* const laws[][2] = {
        {"and(x,y)", "and(y,x)"},
        {"or(x,y)", "or(y,x)"},
        {"and(x,and(y,z))", "and(and(x,y),z)"},
        {"or(x,or(y,z))", "or(or(x,y),z)"},
        {"and(x,or(x,y))", "x"},
        {"or(x,and(x,y))", "x"},
        {"and(x,or(y,z))", "or(and(x,y),and(x,z))"},
        {"and(x,not(x))", "zero"},
        {"or(x,not(x))", "one"},
        {"and(x,x)", "x"},
        {"or(x,x)", "x"},
        {"and(x,one)", "x"},
        {"or(x,zero)", "x"},
        {"and(x,zero)", "zero"},
        {"or(x,one)", "one"},
        {"not(not(x))", "x"},
        {"not(and(x,y))", "or(not(x),not(y))"},
        {"not(or(x,y))", "and(not(x),not(y))"},
    };
    Signature sig = boolean_signature();
    std::set<std::string> vars{"x", "y", "z"};
    std::vector<Identity> out;
    for (const auto& law : laws) {
        out.push_back({parse_term(law[0], sig, vars), parse_term(law[1], sig, vars)});
    }
    return out;
}

FiniteAlgebra powerset_algebra(unsigned atoms, std::string name) {
    if (atoms > 8) {
        throw InputError("powerset algebras are limited to 8 atoms");
    }
    Element full = (Element{1} << atoms) - 1;
    std::vector<std::string> labels;
    for (Element s = 0; s <= full; ++s) {
        std::string label = "{";
        for (unsigned j = 0; j < atoms; ++j) {
            if (s & (Element{1} << j)) {
                if (label.size() > 1) {
                    label += ",";
                }
                label += std::to_string(j + 1);
            }
        }
        labels.push_back(label + "}");
    }
    if (name.empty()) {
        name = "P(" + std::to_string(atoms) + ")";
    }
    return FiniteAlgebra::tabulate(
        boolean_signature(), std::move(labels),
        [full](std::size_t s, std::span<const Element> a) -> Element {
            switch (s) {
            case kAnd:
                return a[0] & a[1];
            case kOr:
                return a[0] | a[1];
            case kNot:
                return full & ~a[0];
            case kZero:
                return 0;
            default:
                return full;
            }
        },
        std::move(name));
}

Variety boolean_variety() {
    FiniteAlgebra ba2 = FiniteAlgebra::tabulate(
        boolean_signature(), {"0", "1"},
        [](std::size_t s, std::span<const Element> a) -> Element {
            switch (s) {
            case kAnd:
                return a[0] & a[1];
            case kOr:
                return a[0] | a[1];
            case kNot:
                return 1 - a[0];
            case kZero:
                return 0;
            default:
                return 1;
            }
        },
        "ba2");
    return make_variety(boolean_signature(), boolean_identities(), {ba2}, "boolean");
}

bool boolean_leq(const FiniteAlgebra& alg, Element a, Element b) { return op2(alg, "and", a, b) == a; }

Element symmetric_difference(const FiniteAlgebra& alg, Element a, Element b) {
    return op2(alg, "or", op2(alg, "and", a, complement(alg, b)), op2(alg, "and", complement(alg, a), b));
}

Lemma2Sides lemma2_check(const FiniteAlgebra& alg, Element a, Element b, Element c) {
    return {op2(alg, "and", a, b) == op2(alg, "and", a, c),
            boolean_leq(alg, a, complement(alg, symmetric_difference(alg, b, c)))};
}

Dnf dnf_normalize(const Term& t, const FiniteAlgebra& alg, const GeneratorMap& base_map) {
    Assignment asg = to_assignment(base_map);
    asg[kExtensionVariable] = top(alg);
    Element b = eval_term(t, alg, asg);
    asg[kExtensionVariable] = bottom(alg);
    Element c = eval_term(t, alg, asg);
    return {b, c};
}

Element BoundsPair::sup_lower(const FiniteAlgebra& alg) const {
    Element s = bottom(alg);
    for (auto l : lower) {
        s = op2(alg, "or", s, l);
    }
    return s;
}

Element BoundsPair::inf_upper(const FiniteAlgebra& alg) const {
    Element s = top(alg);
    for (auto u : upper) {
        s = op2(alg, "and", s, u);
    }
    return s;
}

bool BoundsPair::admits(const FiniteAlgebra& alg, Element a) const {
    return boolean_leq(alg, sup_lower(alg), a) && boolean_leq(alg, a, inf_upper(alg));
}

void add_condition_bounds(BoundsPair& bp, const ExtensionCondition& c, const FiniteAlgebra& alg,
                          const GeneratorMap& base_map, std::size_t origin) {
    Dnf left = dnf_normalize(c.lhs, alg, base_map);
    Dnf right = dnf_normalize(c.rhs, alg, base_map);
    bp.upper.push_back(complement(alg, symmetric_difference(alg, left.b, right.b)));
    bp.upper_origin.push_back(origin);
    bp.lower.push_back(symmetric_difference(alg, left.c, right.c));
    bp.lower_origin.push_back(origin);
}

BoundsPair condition_to_bounds(const ExtensionCondition& c, const FiniteAlgebra& alg, const GeneratorMap& base_map) {
    BoundsPair bp;
    add_condition_bounds(bp, c, alg, base_map, 0);
    return bp;
}

BoundsPair bounds_of(const std::vector<ExtensionCondition>& conds, const FiniteAlgebra& alg,
                     const GeneratorMap& base_map) {
    BoundsPair bp;
    for (std::size_t k = 0; k < conds.size(); ++k) {
        add_condition_bounds(bp, conds[k], alg, base_map, k);
    }
    return bp;
}

Element sup_witness(const BoundsPair& bp, const FiniteAlgebra& alg) {
    Element s = bp.sup_lower(alg);
    Element i = bp.inf_upper(alg);
    if (!boolean_leq(alg, s, i)) {
        throw InputError("bounds cross: the join of the lower bounds " + alg.label(s) +
                         " is not below the meet of the upper bounds " + alg.label(i));
    }
    return s;
}

std::string FiniteCofinite::to_string() const {
    std::string list = "{";
    for (auto n : support) {
        if (list.size() > 1) {
            list += ",";
        }
        list += std::to_string(n);
    }
    list += "}";
    if (!cofinite) {
        return list;
    }
    return support.empty() ? "N" : "N\\" + list;
}

FcRefutation fc_no_sup_demo(const FiniteCofinite& candidate) {
    std::uint64_t last = candidate.cofinite ? (candidate.support.empty() ? 0 : *candidate.support.rbegin() / 2)
                                            : candidate.support.size();
    for (std::uint64_t k = 0; k <= last; ++k) {
        if (!candidate.contains(2 * k)) {
            return {FcRefutation::Kind::NotUpperBound, k, std::nullopt};
        }
    }
    FiniteCofinite smaller = candidate;
    std::uint64_t odd = 1;
    while (!candidate.contains(odd)) {
        odd += 2;
    }
    smaller.support.insert(odd);
    return {FcRefutation::Kind::NotLeast, 0, smaller};
}

std::string format_refutation(const FcRefutation& r) {
    if (r.kind == FcRefutation::Kind::NotUpperBound) {
        std::string e = "{";
        for (std::uint64_t j = 0; j <= r.k; ++j) {
            e += (j ? "," : "") + std::to_string(2 * j);
        }
        return "not an upper bound: E_" + std::to_string(r.k) + " = " + e + "} is not contained in it";
    }
    return "not least: " + r.smaller->to_string() + " is a smaller upper bound";
}

} // namespace ualg
