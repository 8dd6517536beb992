#include "ualg/completeness.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ualg/error.hpp"

namespace ualg {

namespace {

/// A simple extension realized on the subalgebra of `alg` generated by
/// `base` and `a`, remembering where it sits in `alg`.
struct Realized {
    SimpleExtension ext;
    Subalgebra where;
    /// The A0 generators as elements of `alg`.
    Subset gens;
};

std::string subset_name(const FiniteAlgebra& alg, const Subset& s) {
    if (s.size() == alg.size()) {
        return alg.name();
    }
    return alg.name() + format_subset(alg, s);
}

Realized realize(const FiniteAlgebra& alg, const Subset& base, Element a) {
    Subset seed = base;
    seed.push_back(a);
    Subset closure = subalgebra_closure(alg, seed);
    Subalgebra where = restrict(alg, closure, subset_name(alg, closure));
    Subset gens = minimal_generating_set(alg, base);
    GeneratorMap named = name_generators(gens);
    for (auto& [name, e] : named) {
        e = *where.local(e);
    }
    return {make_extension(where.algebra, std::move(named), *where.local(a)), std::move(where), std::move(gens)};
}

std::size_t position(const Subset& s, Element e) {
    return static_cast<std::size_t>(std::lower_bound(s.begin(), s.end(), e) - s.begin());
}

struct Meeting {
    bool met = false;
    std::vector<std::optional<std::size_t>> violated;
};

Meeting meet(const FiniteAlgebra& b, const SimpleExtension& ext, const GeneratorMap& base_map,
             const ConditionSet& conds, CheckStats& stats) {
    Meeting m;
    for (Element e = 0; e < b.size(); ++e) {
        ++stats.candidates;
        auto sat = satisfies_conditions(b, base_map, e, conds);
        if (!sat) {
            m.violated.push_back(sat.violated);
            continue;
        }
        if (extends_to_hom(ext, b, base_map, e)) {
            m.met = true;
            return m;
        }
        ++stats.depth_gaps;
        m.violated.push_back(std::nullopt);
    }
    return m;
}

void require_member(const FiniteAlgebra& b, const Variety& v) {
    if (!(b.signature() == v.sig)) {
        throw InputError("algebra '" + b.name() + "' has signature " + b.signature().to_string() +
                         ", the variety expects " + v.sig.to_string());
    }
    if (auto bad = first_failing_identity(b, v.identities)) {
        throw InputError("algebra '" + b.name() + "' violates identity " + print_identity(v.identities[*bad]));
    }
}

class Context {
public:
    Context(const FiniteAlgebra& b, const Variety& v, const CheckOptions& options)
        : b_(b), v_(v), options_(options) {
        require_member(b, v);
        std::vector<FiniteAlgebra> preferred{b};
        preferred.insert(preferred.end(), v.generating_algebras.begin(), v.generating_algebras.end());
        members = variety_members(v, options.size_bound, preferred, options.search);
    }

    const std::vector<TermClass>& classes(const std::vector<std::string>& names) {
        auto it = classes_.find(names);
        if (it == classes_.end()) {
            it = classes_.emplace(names, enumerate_classes(v_, names, options_.depth, kExtensionVariable)).first;
        }
        return it->second;
    }

    /// nullptr when the free algebra exceeds the cap.
    const FreeAlgebra* free(const std::vector<std::string>& names) {
        auto it = free_.find(names);
        if (it == free_.end()) {
            std::optional<FreeAlgebra> f;
            try {
                f = free_algebra(v_, names, options_.free_cap);
            } catch (const CapExceeded&) {
            }
            it = free_.emplace(names, std::move(f)).first;
        }
        return it->second ? &*it->second : nullptr;
    }

    std::vector<FiniteAlgebra> members;

private:
    const FiniteAlgebra& b_;
    const Variety& v_;
    const CheckOptions& options_;
    std::map<std::vector<std::string>, std::vector<TermClass>> classes_;
    std::map<std::vector<std::string>, std::optional<FreeAlgebra>> free_;
};

std::vector<std::string> names_with_x(const GeneratorMap& gens) {
    std::vector<std::string> names;
    for (const auto& [name, e] : gens) {
        names.push_back(name);
    }
    names.push_back(kExtensionVariable);
    return names;
}

/// A homomorphism from a subalgebra of a member into B, as input to the
/// construction.
struct Source {
    std::size_t member;
    Subset sub;
    std::vector<Element> map;
};

/// Adjoins the least unmapped element, trying every image in B.
bool extend_chain(const FiniteAlgebra& member, const FiniteAlgebra& b, std::vector<std::optional<Element>>& map,
                  std::optional<InjectivityWitness>& stuck, CheckStats& stats) {
    Subset mapped;
    std::optional<Element> next;
    for (Element e = 0; e < member.size(); ++e) {
        if (map[e]) {
            mapped.push_back(e);
        } else if (!next) {
            next = e;
        }
    }
    if (!next) {
        return true;
    }
    Realized r = realize(member, mapped, *next);
    GeneratorMap base_map;
    for (std::size_t i = 0; i < r.gens.size(); ++i) {
        base_map.emplace_back(r.ext.base_gens[i].first, *map[r.gens[i]]);
    }
    bool any = false;
    for (Element e = 0; e < b.size(); ++e) {
        ++stats.candidates;
        auto h = extends_to_hom(r.ext, b, base_map, e);
        if (!h) {
            continue;
        }
        any = true;
        auto saved = map;
        for (std::size_t i = 0; i < h->map.size(); ++i) {
            map[r.where.embedding[i]] = h->map[i];
        }
        if (extend_chain(member, b, map, stuck, stats)) {
            return true;
        }
        map = std::move(saved);
    }
    if (!any && !stuck) {
        InjectivityWitness w{member, {}, {}, mapped, *next, {}};
        for (auto e : mapped) {
            w.step_map.push_back(*map[e]);
        }
        stuck = std::move(w);
    }
    return false;
}

} // namespace

CompletenessVerdict is_complete_upto(const FiniteAlgebra& b, const Variety& v, const CheckOptions& options) {
    Context ctx(b, v, options);
    CompletenessVerdict verdict;
    CheckStats& stats = verdict.stats;
    stats.members = ctx.members.size();

    std::map<Subset, std::vector<Source>> sources;
    for (std::size_t m = 0; m < ctx.members.size(); ++m) {
        const auto& e = ctx.members[m];
        for (const auto& a : enumerate_subalgebras(e)) {
            for (const auto& g : enumerate_homs(restrict(e, a).algebra, b)) {
                ++stats.homomorphisms;
                sources[g.image()].push_back({m, a, g.map});
            }
        }
    }

    auto fail = [&](const Subset& sub, SimpleExtension ext, GeneratorMap base_map, ConditionSet conds,
                    std::string origin, Meeting& m) {
        verdict.passed = false;
        verdict.witness = CompletenessWitness{sub,           std::move(ext),   std::move(base_map), std::move(conds),
                                              std::move(origin), std::move(m.violated)};
    };

    for (const auto& sub : enumerate_subalgebras(b)) {
        ++stats.subalgebras;
        Subalgebra sub_alg = restrict(b, sub);
        Subset gens = minimal_generating_set(b, sub);
        GeneratorMap base_map = name_generators(gens);

        for (const auto& e : ctx.members) {
            for (const auto& phi : enumerate_homs(sub_alg.algebra, e)) {
                if (!phi.injective()) {
                    continue;
                }
                Subset image = phi.image();
                for (Element a = 0; a < e.size(); ++a) {
                    ++stats.realized_extensions;
                    Subset seed = image;
                    seed.push_back(a);
                    Subset closure = subalgebra_closure(e, seed);
                    Subalgebra where = restrict(e, closure, subset_name(e, closure));
                    GeneratorMap amb = base_map;
                    for (auto& [name, x] : amb) {
                        x = *where.local(phi.map[position(sub, x)]);
                    }
                    auto ext = make_extension(where.algebra, std::move(amb), *where.local(a));
                    auto conds = enumerate_condition_set(ctx.classes(ext.generator_names()), ext);
                    Meeting m = meet(b, ext, base_map, conds, stats);
                    if (!m.met) {
                        fail(sub, std::move(ext), base_map, std::move(conds), "extension inside " + e.name(), m);
                        return verdict;
                    }
                }
            }
        }

        for (const auto& src : sources[sub]) {
            const auto& e = ctx.members[src.member];
            for (Element a = 0; a < e.size(); ++a) {
                Realized r = realize(e, src.sub, a);
                Homomorphism g{r.ext.base_algebra().algebra, b, src.map};
                GeneratorMap image_gens = image_generators(r.ext, g);
                const FreeAlgebra* free = ctx.free(names_with_x(image_gens));
                if (!free) {
                    ++stats.skipped;
                    continue;
                }
                ++stats.constructed_extensions;
                Prop2Result p = prop2_construct(r.ext, g, *free);
                auto ext = p.as_extension();
                auto conds = enumerate_condition_set(ctx.classes(ext.generator_names()), ext);
                Meeting m = meet(b, ext, image_gens, conds, stats);
                if (!m.met) {
                    fail(sub, std::move(ext), std::move(image_gens), std::move(conds),
                         "construction over " + subset_name(e, src.sub) + " in " + e.name() + " with x = " +
                             e.label(a),
                         m);
                    return verdict;
                }
            }
        }
    }
    return verdict;
}

InjectivityVerdict is_injective_upto(const FiniteAlgebra& b, const Variety& v, const CheckOptions& options) {
    Context ctx(b, v, options);
    InjectivityVerdict verdict;
    CheckStats& stats = verdict.stats;
    stats.members = ctx.members.size();
    for (const auto& e : ctx.members) {
        for (const auto& a : enumerate_subalgebras(e)) {
            ++stats.subalgebras;
            for (const auto& g : enumerate_homs(restrict(e, a).algebra, b)) {
                ++stats.homomorphisms;
                std::vector<std::optional<Element>> map(e.size());
                for (std::size_t i = 0; i < a.size(); ++i) {
                    map[a[i]] = g.map[i];
                }
                std::optional<InjectivityWitness> stuck;
                if (!extend_chain(e, b, map, stuck, stats)) {
                    if (!stuck) {
                        throw InternalError("injectivity search failed without a failing step");
                    }
                    stuck->sub = a;
                    stuck->hom = g.map;
                    verdict.passed = false;
                    verdict.witness = std::move(stuck);
                    return verdict;
                }
            }
        }
    }
    return verdict;
}

InjectivityWitness to_injectivity_witness(const CompletenessWitness& w, const FiniteAlgebra& b) {
    const SimpleExtension& ext = w.extension;
    Subalgebra base = ext.base_algebra();
    std::map<std::string, Element, std::less<>> target(w.base_map.begin(), w.base_map.end());
    PartialMap seed(base.algebra.size());
    for (const auto& [name, e] : ext.base_gens) {
        seed[*base.local(e)] = target.at(name);
    }
    auto full = propagate_images(base.algebra, b, seed);
    if (!full) {
        throw InputError("the witness base map is not a homomorphism");
    }
    std::vector<Element> hom;
    for (const auto& e : *full) {
        hom.push_back(e.value());
    }
    return InjectivityWitness{ext.ambient, ext.base, hom, ext.base, ext.ext_elem, hom};
}

CompletenessWitness to_completeness_witness(const InjectivityWitness& w, const FiniteAlgebra& b, const Variety& v,
                                            unsigned depth, std::size_t free_cap) {
    Realized r = realize(w.member, w.step_base, w.step_elem);
    Homomorphism g{r.ext.base_algebra().algebra, b, w.step_map};
    Prop2Result p = prop2_construct(v, r.ext, g, free_cap);
    auto ext = p.as_extension();
    auto conds = enumerate_condition_set(v, ext, depth);
    GeneratorMap base_map = image_generators(r.ext, g);
    CheckStats stats;
    Meeting m = meet(b, ext, base_map, conds, stats);
    if (m.met) {
        throw InternalError("the converted extension is met by an element of B");
    }
    Subset sub(w.step_map.begin(), w.step_map.end());
    std::sort(sub.begin(), sub.end());
    sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
    return CompletenessWitness{sub,
                               std::move(ext),
                               std::move(base_map),
                               std::move(conds),
                               "construction over " + subset_name(w.member, w.step_base) + " in " + w.member.name() +
                                   " with x = " + w.member.label(w.step_elem),
                               std::move(m.violated)};
}

bool replay(const CompletenessWitness& w, const FiniteAlgebra& b) {
    for (std::size_t k = 0; k < w.conditions.size(); ++k) {
        if (!condition_holds(w.extension, w.conditions.condition(k))) {
            return false;
        }
    }
    try {
        for (Element e = 0; e < b.size(); ++e) {
            if (satisfies_conditions(b, w.base_map, e, w.conditions) && extends_to_hom(w.extension, b, w.base_map, e)) {
                return false;
            }
        }
    } catch (const InputError&) {
        return false;
    }
    return true;
}

bool replay(const InjectivityWitness& w, const FiniteAlgebra& b) {
    if (!is_homomorphism(w.hom, restrict(w.member, w.sub).algebra, b)) {
        return false;
    }
    for (const auto& h : enumerate_homs(w.member, b)) {
        bool restricts = true;
        for (std::size_t i = 0; i < w.sub.size() && restricts; ++i) {
            restricts = h.map[w.sub[i]] == w.hom[i];
        }
        if (restricts) {
            return false;
        }
    }
    Realized r = realize(w.member, w.step_base, w.step_elem);
    GeneratorMap base_map;
    for (std::size_t i = 0; i < r.gens.size(); ++i) {
        base_map.emplace_back(r.ext.base_gens[i].first, w.step_map[position(w.step_base, r.gens[i])]);
    }
    try {
        for (Element e = 0; e < b.size(); ++e) {
            if (extends_to_hom(r.ext, b, base_map, e)) {
                return false;
            }
        }
    } catch (const InputError&) {
        return false;
    }
    return true;
}

CrosscheckReport crosscheck_prop3(const FiniteAlgebra& b, const Variety& v, const CheckOptions& options) {
    CrosscheckReport r;
    r.complete = is_complete_upto(b, v, options);
    r.injective = is_injective_upto(b, v, options);
    r.agree = r.complete.passed == r.injective.passed;
    if (!r.agree) {
        CheckOptions larger = options;
        larger.size_bound += 1;
        larger.depth += 1;
        r.rerun_options = larger;
        r.rerun_complete = is_complete_upto(b, v, larger).passed;
        r.rerun_injective = is_injective_upto(b, v, larger).passed;
        r.witnesses_convert = false;
        return r;
    }
    if (!r.complete.passed) {
        try {
            auto inj = to_injectivity_witness(*r.complete.witness, b);
            auto comp = to_completeness_witness(*r.injective.witness, b, v, options.depth, options.free_cap);
            r.witnesses_convert = replay(*r.complete.witness, b) && replay(*r.injective.witness, b) &&
                                  replay(inj, b) && replay(comp, b);
        } catch (const Error&) {
            r.witnesses_convert = false;
        }
    }
    return r;
}

} // namespace ualg
