#include "ualg/extension.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ualg/congruence.hpp"
#include "ualg/error.hpp"

namespace ualg {

namespace {

std::size_t base_index(const SimpleExtension& ext, Element e) {
    auto it = std::lower_bound(ext.base.begin(), ext.base.end(), e);
    if (it == ext.base.end() || *it != e) {
        throw InternalError("element outside the base subalgebra");
    }
    return static_cast<std::size_t>(it - ext.base.begin());
}

void require_base_domain(const SimpleExtension& ext, const Homomorphism& g) {
    if (g.dom.size() != ext.base.size() || !g.dom.same_tables(ext.base_algebra().algebra)) {
        throw InputError("the homomorphism's domain is not the base subalgebra of the extension");
    }
}

Assignment with_x(const GeneratorMap& base_map, Element b) {
    Assignment asg = to_assignment(base_map);
    asg[kExtensionVariable] = b;
    return asg;
}

} // namespace

Assignment SimpleExtension::assignment() const { return with_x(base_gens, ext_elem); }

std::vector<std::string> SimpleExtension::generator_names() const {
    std::vector<std::string> names;
    for (const auto& [name, e] : base_gens) {
        names.push_back(name);
    }
    names.push_back(kExtensionVariable);
    return names;
}

SimpleExtension make_extension(FiniteAlgebra ambient, GeneratorMap base_gens, Element ext_elem) {
    std::set<std::string> seen;
    Subset seed;
    for (const auto& [name, e] : base_gens) {
        if (!is_identifier(name) || name == kExtensionVariable || ambient.signature().find(name)) {
            throw InputError("'" + name + "' cannot name a base generator");
        }
        if (!seen.insert(name).second) {
            throw InputError("duplicate base generator '" + name + "'");
        }
        if (e >= ambient.size()) {
            throw InputError("base generator '" + name + "' lies outside the ambient carrier");
        }
        seed.push_back(e);
    }
    if (ext_elem >= ambient.size()) {
        throw InputError("the adjoined element lies outside the ambient carrier");
    }
    Subset base = subalgebra_closure(ambient, seed);
    seed.push_back(ext_elem);
    if (subalgebra_closure(ambient, seed).size() != ambient.size()) {
        throw InputError("the base generators and the adjoined element do not generate the ambient algebra");
    }
    return SimpleExtension{std::move(ambient), std::move(base_gens), ext_elem, std::move(base)};
}

SimpleExtension realize_extension(const FiniteAlgebra& alg, const Subset& sub, Element a, std::string name) {
    Subset seed = sub;
    seed.push_back(a);
    Subalgebra r = restrict(alg, subalgebra_closure(alg, seed), std::move(name));
    Subset gens = minimal_generating_set(alg, sub);
    GeneratorMap named = name_generators(gens);
    for (auto& [n, e] : named) {
        e = *r.local(e);
    }
    return make_extension(r.algebra, std::move(named), *r.local(a));
}

std::string print_condition(const ExtensionCondition& c) { return print_term(c.lhs) + " = " + print_term(c.rhs); }

bool condition_holds(const SimpleExtension& ext, const ExtensionCondition& c) {
    auto asg = ext.assignment();
    return eval_term(c.lhs, ext.ambient, asg) == eval_term(c.rhs, ext.ambient, asg);
}

std::vector<ExtensionCondition> enumerate_conditions(const SimpleExtension& ext, unsigned depth, std::size_t cap) {
    auto names = ext.generator_names();
    auto terms = enumerate_terms(ext.ambient.signature(), names, depth, cap);
    auto asg = ext.assignment();
    std::vector<std::vector<std::size_t>> by_value(ext.ambient.size());
    std::vector<char> has_x(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        by_value[eval_term(terms[i], ext.ambient, asg)].push_back(i);
        has_x[i] = terms[i].mentions(kExtensionVariable);
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& bucket : by_value) {
        for (std::size_t p = 0; p < bucket.size(); ++p) {
            for (std::size_t q = p + 1; q < bucket.size(); ++q) {
                if (has_x[bucket[p]] || has_x[bucket[q]]) {
                    pairs.emplace_back(bucket[p], bucket[q]);
                }
            }
        }
    }
    std::sort(pairs.begin(), pairs.end());
    std::vector<ExtensionCondition> out;
    out.reserve(pairs.size());
    for (auto [i, j] : pairs) {
        out.push_back({terms[i], terms[j]});
    }
    return out;
}

std::vector<ExtensionCondition> ConditionSet::conditions() const {
    std::vector<ExtensionCondition> out;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        out.push_back(condition(k));
    }
    return out;
}

ConditionSet enumerate_condition_set(const Variety& v, const SimpleExtension& ext, unsigned depth, std::size_t cap) {
    return enumerate_condition_set(enumerate_classes(v, ext.generator_names(), depth, kExtensionVariable, cap), ext);
}

ConditionSet enumerate_condition_set(const std::vector<TermClass>& classes, const SimpleExtension& ext) {
    ConditionSet set;
    set.generators = ext.generator_names();
    auto asg = ext.assignment();
    std::vector<Element> values;
    for (auto& c : classes) {
        values.push_back(eval_term(c.representative, ext.ambient, asg));
        set.terms.push_back(c.representative);
    }
    for (std::size_t i = 0; i < classes.size(); ++i) {
        for (std::size_t j = i + 1; j < classes.size(); ++j) {
            if (values[i] == values[j] && (classes[i].marked || classes[j].marked)) {
                set.pairs.emplace_back(i, j);
            }
        }
    }
    return set;
}

Satisfaction satisfies_conditions(const FiniteAlgebra& target, const GeneratorMap& base_map, Element b,
                                  const std::vector<ExtensionCondition>& conds) {
    auto asg = with_x(base_map, b);
    for (std::size_t k = 0; k < conds.size(); ++k) {
        if (eval_term(conds[k].lhs, target, asg) != eval_term(conds[k].rhs, target, asg)) {
            return {false, k};
        }
    }
    return {};
}

Satisfaction satisfies_conditions(const FiniteAlgebra& target, const GeneratorMap& base_map, Element b,
                                  const ConditionSet& conds) {
    auto asg = with_x(base_map, b);
    std::vector<Element> values;
    values.reserve(conds.terms.size());
    for (const auto& t : conds.terms) {
        values.push_back(eval_term(t, target, asg));
    }
    for (std::size_t k = 0; k < conds.pairs.size(); ++k) {
        if (values[conds.pairs[k].first] != values[conds.pairs[k].second]) {
            return {false, k};
        }
    }
    return {};
}

std::optional<Homomorphism> extends_to_hom(const SimpleExtension& ext, const FiniteAlgebra& target,
                                           const GeneratorMap& base_map, Element b) {
    std::map<std::string, Element, std::less<>> images;
    for (const auto& [name, e] : base_map) {
        if (e >= target.size()) {
            throw InputError("base map sends '" + name + "' outside the target carrier");
        }
        images[name] = e;
    }
    if (b >= target.size()) {
        throw InputError("the candidate element lies outside the target carrier");
    }
    PartialMap seed(ext.ambient.size());
    bool consistent = true;
    for (const auto& [name, e] : ext.base_gens) {
        auto it = images.find(name);
        if (it == images.end()) {
            throw InputError("base map does not cover generator '" + name + "'");
        }
        if (seed[e] && *seed[e] != it->second) {
            consistent = false;
        }
        seed[e] = it->second;
    }
    // The restriction to A must be a homomorphism on its own.
    Subalgebra sub = ext.base_algebra();
    PartialMap base_seed(sub.algebra.size());
    for (std::size_t i = 0; i < ext.base.size(); ++i) {
        base_seed[i] = seed[ext.base[i]];
    }
    if (!consistent || !propagate_images(sub.algebra, target, base_seed)) {
        throw InputError("base map does not extend to a homomorphism on the base subalgebra");
    }
    if (seed[ext.ext_elem] && *seed[ext.ext_elem] != b) {
        return std::nullopt;
    }
    seed[ext.ext_elem] = b;
    auto full = propagate_images(ext.ambient, target, std::move(seed));
    if (!full) {
        return std::nullopt;
    }
    std::vector<Element> map;
    for (const auto& e : *full) {
        if (!e) {
            throw InternalError("extension generators left an element unmapped");
        }
        map.push_back(*e);
    }
    return Homomorphism{ext.ambient, target, std::move(map)};
}

GeneratorMap image_generators(const SimpleExtension& ext, const Homomorphism& g) {
    GeneratorMap out;
    std::set<Element> seen;
    for (const auto& [name, e] : ext.base_gens) {
        Element img = g.map.at(base_index(ext, e));
        if (seen.insert(img).second) {
            out.emplace_back(name, img);
        }
    }
    return out;
}

TransportMap transport_map(const SimpleExtension& ext, const Homomorphism& g) {
    std::map<Element, std::string> name_of;
    for (const auto& [name, e] : image_generators(ext, g)) {
        name_of.emplace(e, name);
    }
    TransportMap t;
    for (const auto& [name, e] : ext.base_gens) {
        t.binding.insert_or_assign(name, Term::generator(name_of.at(g.map.at(base_index(ext, e)))));
    }
    t.binding.insert_or_assign(kExtensionVariable, Term::generator(kExtensionVariable));
    return t;
}

namespace {

Prop1Result prop1_over(const SimpleExtension& ext, const Homomorphism& g, Element b,
                       const std::vector<ExtensionCondition>& conds) {
    TransportMap t = transport_map(ext, g);
    auto asg = with_x(image_generators(ext, g), b);
    for (const auto& c : conds) {
        auto moved = t(c);
        if (eval_term(moved.lhs, g.cod, asg) != eval_term(moved.rhs, g.cod, asg)) {
            return {false, moved};
        }
    }
    return {};
}

} // namespace

Prop1Result prop1_check(const SimpleExtension& ext, const Homomorphism& g, Element b, unsigned depth) {
    require_base_domain(ext, g);
    return prop1_over(ext, g, b, enumerate_conditions(ext, depth));
}

Prop1Result prop1_check(const Variety& v, const SimpleExtension& ext, const Homomorphism& g, Element b,
                        unsigned depth) {
    require_base_domain(ext, g);
    return prop1_over(ext, g, b, enumerate_condition_set(v, ext, depth).conditions());
}

SimpleExtension Prop2Result::as_extension() const { return make_extension(algebra, base_gens, x); }

namespace {

std::vector<std::string> free_names(const SimpleExtension& ext, const Homomorphism& g) {
    std::vector<std::string> names;
    for (const auto& [name, e] : image_generators(ext, g)) {
        names.push_back(name);
    }
    names.push_back(kExtensionVariable);
    return names;
}

} // namespace

Prop2Result prop2_construct(const Variety& v, const SimpleExtension& ext, const Homomorphism& g, std::size_t cap) {
    require_base_domain(ext, g);
    return prop2_construct(ext, g, free_algebra(v, free_names(ext, g), cap));
}

Prop2Result prop2_construct(const SimpleExtension& ext, const Homomorphism& g, const FreeAlgebra& free) {
    require_base_domain(ext, g);
    GeneratorMap b_gens = image_generators(ext, g);
    std::vector<std::string> names = free_names(ext, g);
    if (free.generators != names) {
        throw InputError("the free algebra's generators do not match the image generators and x");
    }
    const FiniteAlgebra& f = free.algebra;
    auto free_gen = [&](const std::string& name) {
        auto it = std::find(names.begin(), names.end(), name);
        return free.generator_elements[static_cast<std::size_t>(it - names.begin())];
    };

    // Each A0 generator goes to the free generator of its image; x stays x.
    TransportMap t = transport_map(ext, g);
    Assignment moved;
    for (const auto& [name, term] : t.binding) {
        moved[name] = free_gen(term.name());
    }
    GeneratorMap ambient_gens = ext.base_gens;
    ambient_gens.emplace_back(kExtensionVariable, ext.ext_elem);
    auto reps = representatives(ext.ambient, ambient_gens);
    std::vector<Element> val(ext.ambient.size());
    for (std::size_t e = 0; e < reps.size(); ++e) {
        val[e] = eval_term(*reps[e], f, moved);
    }

    std::vector<ElementPair> pairs;
    const auto& sig = ext.ambient.signature();
    std::vector<Element> images(sig.max_arity());
    for (std::size_t s = 0; s < sig.size(); ++s) {
        for_each_tuple(sig[s].arity, ext.ambient.size(), [&](std::span<const Element> args) {
            for (std::size_t i = 0; i < args.size(); ++i) {
                images[i] = val[args[i]];
            }
            Element lhs = f.apply(s, std::span<const Element>(images.data(), args.size()));
            Element rhs = val[ext.ambient.apply(s, args)];
            if (lhs != rhs) {
                pairs.emplace_back(lhs, rhs);
            }
        });
    }
    for (const auto& [name, e] : ambient_gens) {
        pairs.emplace_back(moved.at(name), val[e]);
    }
    std::map<Element, std::size_t> first_preimage;
    for (std::size_t i = 0; i < ext.base.size(); ++i) {
        auto [it, fresh] = first_preimage.emplace(g.map[i], i);
        if (!fresh) {
            pairs.emplace_back(val[ext.base[it->second]], val[ext.base[i]]);
        }
    }

    Quotient q = quotient(congruence_generated(f, pairs));
    Prop2Result r{q.algebra.renamed((g.cod.name().empty() ? std::string("B") : g.cod.name()) + "+x"),
                  {}, {}, {}, q.projection(free_gen(kExtensionVariable)), f.size()};
    for (const auto& [b, i] : first_preimage) {
        r.image.push_back(b);
        r.embedding.push_back(q.projection(val[ext.base[i]]));
    }
    for (const auto& [name, e] : b_gens) {
        r.base_gens.emplace_back(name, q.projection(free_gen(name)));
    }

    if (std::set<Element>(r.embedding.begin(), r.embedding.end()).size() != r.embedding.size()) {
        throw InternalError("B does not embed into the constructed extension");
    }
    Subalgebra b_alg = restrict(g.cod, r.image);
    if (!is_homomorphism(r.embedding, b_alg.algebra, r.algebra)) {
        throw InternalError("the embedding of B is not a homomorphism");
    }
    Subset seed;
    for (const auto& [name, e] : r.base_gens) {
        seed.push_back(e);
    }
    seed.push_back(r.x);
    if (subalgebra_closure(r.algebra, seed).size() != r.algebra.size()) {
        throw InternalError("B and x do not generate the constructed extension");
    }
    return r;
}

namespace {

Lemma1Result lemma1_over(const GeneratorMap& h, const FiniteAlgebra& target, const std::vector<Term>& terms) {
    Subset seed;
    for (const auto& [name, e] : h) {
        seed.push_back(e);
    }
    Subalgebra sub = restrict(target, subalgebra_closure(target, seed));
    Binding rename;
    Assignment self;
    for (const auto& [name, e] : h) {
        Element local = *sub.local(e);
        std::string symbol = "_e" + std::to_string(local);
        rename.insert_or_assign(name, Term::generator(symbol));
        self[symbol] = local;
    }
    auto direct_asg = to_assignment(h);
    Lemma1Result r;
    for (const auto& w : terms) {
        ++r.checked;
        Element direct = eval_term(w, target, direct_asg);
        Element via = sub.embedding[eval_term(substitute(w, rename), sub.algebra, self)];
        if (direct != via) {
            r.ok = false;
            r.counterexample = w;
            return r;
        }
    }
    return r;
}

std::vector<std::string> names_of(const GeneratorMap& h) {
    std::vector<std::string> names;
    for (const auto& [name, e] : h) {
        names.push_back(name);
    }
    return names;
}

} // namespace

Lemma1Result lemma1_audit(const Variety& v, const GeneratorMap& h, const FiniteAlgebra& target, unsigned depth) {
    std::vector<Term> terms;
    for (auto& c : enumerate_classes(v, names_of(h), depth)) {
        terms.push_back(std::move(c.representative));
    }
    return lemma1_over(h, target, terms);
}

Lemma1Result lemma1_audit(const GeneratorMap& h, const FiniteAlgebra& target, unsigned depth, std::size_t cap) {
    auto names = names_of(h);
    return lemma1_over(h, target, enumerate_terms(target.signature(), names, depth, cap));
}

} // namespace ualg
