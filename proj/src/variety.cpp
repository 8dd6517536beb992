#include "ualg/variety.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <unordered_map>

#include "ualg/error.hpp"

namespace ualg {

namespace {

struct VectorHash {
    std::size_t operator()(const std::vector<Element>& v) const {
        std::size_t h = v.size();
        for (auto e : v) {
            h ^= e + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

/// One coordinate per (generating algebra, assignment of the generators).
struct Coordinates {
    std::vector<std::size_t> alg;
    std::vector<std::vector<Element>> assignment;

    std::size_t size() const { return alg.size(); }
};

Coordinates coordinates(const Variety& v, std::size_t k) {
    Coordinates c;
    for (std::size_t i = 0; i < v.generating_algebras.size(); ++i) {
        for_each_tuple(k, v.generating_algebras[i].size(), [&](std::span<const Element> t) {
            c.alg.push_back(i);
            c.assignment.emplace_back(t.begin(), t.end());
        });
    }
    return c;
}

void require_generating(const Variety& v) {
    if (!v.has_generating_algebras()) {
        throw InputError("variety '" + v.name +
                         "' is given by identities only; free algebras need generating algebras");
    }
}

std::vector<Element> apply_vector(const Variety& v, const Coordinates& c, std::size_t symbol,
                                  std::span<const std::vector<Element>* const> args) {
    std::vector<Element> out(c.size());
    Element buf[kMaxArity];
    for (std::size_t k = 0; k < c.size(); ++k) {
        for (std::size_t a = 0; a < args.size(); ++a) {
            buf[a] = (*args[a])[k];
        }
        out[k] = v.generating_algebras[c.alg[k]].apply(symbol, std::span<const Element>(buf, args.size()));
    }
    return out;
}

std::vector<Element> eval_vector(const Variety& v, const Coordinates& c, const std::vector<std::string>& gens,
                                 const Term& t) {
    if (t.is_generator()) {
        auto it = std::find(gens.begin(), gens.end(), t.name());
        std::size_t j = static_cast<std::size_t>(it - gens.begin());
        std::vector<Element> out(c.size());
        for (std::size_t k = 0; k < c.size(); ++k) {
            out[k] = c.assignment[k][j];
        }
        return out;
    }
    std::vector<std::vector<Element>> vals;
    for (const auto& a : t.args()) {
        vals.push_back(eval_vector(v, c, gens, a));
    }
    std::vector<const std::vector<Element>*> ptrs;
    for (const auto& x : vals) {
        ptrs.push_back(&x);
    }
    return apply_vector(v, c, t.symbol(), ptrs);
}

struct ClosureItem {
    Term rep;
    std::vector<Element> vec;
    bool marked;
};

/// Breadth-first closure of the generator and constant vectors, one level per
/// term height.
std::vector<ClosureItem> level_closure(const Variety& v, const Coordinates& c, const std::vector<std::string>& gens,
                                       std::optional<unsigned> depth, int marked, std::size_t cap,
                                       const std::string& what) {
    std::vector<ClosureItem> items;
    std::unordered_map<std::vector<Element>, std::size_t, VectorHash> index[2];
    auto add = [&](Term rep, std::vector<Element> vec, bool m) {
        auto& idx = index[m ? 1 : 0];
        if (idx.count(vec)) {
            return;
        }
        if (items.size() >= cap) {
            throw CapExceeded(what, cap);
        }
        idx.emplace(vec, items.size());
        items.push_back({std::move(rep), std::move(vec), m});
    };
    for (std::size_t j = 0; j < gens.size(); ++j) {
        std::vector<Element> vec(c.size());
        for (std::size_t k = 0; k < c.size(); ++k) {
            vec[k] = c.assignment[k][j];
        }
        add(Term::generator(gens[j]), std::move(vec), static_cast<int>(j) == marked);
    }
    for (std::size_t s = 0; s < v.sig.size(); ++s) {
        if (v.sig[s].arity == 0) {
            add(Term::apply(v.sig, s, {}), apply_vector(v, c, s, {}), false);
        }
    }
    std::size_t start = 0;
    std::size_t end = items.size();
    unsigned height = 0;
    std::vector<const std::vector<Element>*> ptrs;
    std::vector<Term> args;
    while (start < end && (!depth || height < *depth)) {
        for (std::size_t s = 0; s < v.sig.size(); ++s) {
            unsigned arity = v.sig[s].arity;
            if (arity == 0) {
                continue;
            }
            for_each_tuple(arity, end, [&](std::span<const Element> t) {
                if (*std::max_element(t.begin(), t.end()) < start) {
                    return;
                }
                ptrs.clear();
                args.clear();
                bool m = false;
                for (auto i : t) {
                    ptrs.push_back(&items[i].vec);
                    args.push_back(items[i].rep);
                    m = m || items[i].marked;
                }
                auto vec = apply_vector(v, c, s, ptrs);
                if (index[m ? 1 : 0].count(vec)) {
                    return;
                }
                add(Term::apply(v.sig, s, args), std::move(vec), m);
            });
        }
        start = end;
        end = items.size();
        ++height;
    }
    return items;
}

} // namespace

bool Variety::contains(const FiniteAlgebra& alg) const {
    return alg.signature() == sig && !first_failing_identity(alg, identities);
}

Variety make_variety(Signature sig, std::vector<Identity> identities, std::vector<FiniteAlgebra> generating,
                     std::string name) {
    Variety v{std::move(sig), std::move(identities), std::move(generating), std::move(name)};
    for (const auto& g : v.generating_algebras) {
        if (!(g.signature() == v.sig)) {
            throw InputError("generating algebra '" + g.name() + "' has signature " + g.signature().to_string() +
                             ", expected " + v.sig.to_string());
        }
        if (auto bad = first_failing_identity(g, v.identities)) {
            throw InputError("generating algebra '" + g.name() + "' violates identity " +
                             print_identity(v.identities[*bad]));
        }
    }
    return v;
}

FreeAlgebra free_algebra(const Variety& v, const std::vector<std::string>& generators, std::size_t cap) {
    require_generating(v);
    if (std::set<std::string>(generators.begin(), generators.end()).size() != generators.size()) {
        throw InputError("free algebra generators must be distinct");
    }
    Coordinates c = coordinates(v, generators.size());
    std::string what = "free algebra on " + std::to_string(generators.size()) + " generator(s) in variety '" +
                       v.name + "'";
    auto items = level_closure(v, c, generators, std::nullopt, -1, cap, what);
    if (items.empty()) {
        throw InputError("free algebra on no generators is empty: the signature has no constants");
    }
    std::unordered_map<std::vector<Element>, Element, VectorHash> index;
    std::vector<std::string> labels;
    std::vector<Term> reps;
    std::vector<std::vector<Element>> vectors;
    for (std::size_t i = 0; i < items.size(); ++i) {
        index.emplace(items[i].vec, static_cast<Element>(i));
        labels.push_back(print_term(items[i].rep));
        reps.push_back(items[i].rep);
        vectors.push_back(items[i].vec);
    }
    std::vector<const std::vector<Element>*> ptrs;
    auto algebra = FiniteAlgebra::tabulate(
        v.sig, std::move(labels),
        [&](std::size_t s, std::span<const Element> args) {
            ptrs.clear();
            for (auto a : args) {
                ptrs.push_back(&vectors[a]);
            }
            auto it = index.find(apply_vector(v, c, s, ptrs));
            if (it == index.end()) {
                throw InternalError("free algebra closure is not closed");
            }
            return it->second;
        },
        "F(" + std::to_string(generators.size()) + ")");
    std::vector<Element> gen_elements;
    for (std::size_t j = 0; j < generators.size(); ++j) {
        std::vector<Element> vec(c.size());
        for (std::size_t k = 0; k < c.size(); ++k) {
            vec[k] = c.assignment[k][j];
        }
        gen_elements.push_back(index.at(vec));
    }
    bool collapse = std::set<Element>(gen_elements.begin(), gen_elements.end()).size() != generators.size();
    return FreeAlgebra{std::move(algebra), generators, std::move(gen_elements), std::move(reps), std::move(vectors),
                       collapse};
}

FreeAlgebra free_algebra(const Variety& v, std::size_t k, std::size_t cap) {
    std::vector<std::string> gens;
    for (std::size_t i = 1; i <= k; ++i) {
        gens.push_back("x" + std::to_string(i));
    }
    return free_algebra(v, gens, cap);
}

bool factor_class_equal(const Variety& v, const Term& w, const Term& w2) {
    require_generating(v);
    std::set<std::string> names;
    w.collect_generators(names);
    w2.collect_generators(names);
    std::vector<std::string> gens(names.begin(), names.end());
    Coordinates c = coordinates(v, gens.size());
    return eval_vector(v, c, gens, w) == eval_vector(v, c, gens, w2);
}

bool kernel_related(const FiniteAlgebra& alg, const GeneratorMap& gens, const Term& w, const Term& w2) {
    Subset seed;
    for (const auto& [name, e] : gens) {
        seed.push_back(e);
    }
    if (subalgebra_closure(alg, seed).size() != alg.size()) {
        throw InputError("generators " + format_subset(alg, subalgebra_closure(alg, seed)) +
                         " do not generate the algebra");
    }
    auto asg = to_assignment(gens);
    return eval_term(w, alg, asg) == eval_term(w2, alg, asg);
}

std::vector<TermClass> enumerate_classes(const Variety& v, const std::vector<std::string>& generators,
                                         unsigned depth, const std::string& marked, std::size_t cap) {
    require_generating(v);
    int m = -1;
    if (!marked.empty()) {
        auto it = std::find(generators.begin(), generators.end(), marked);
        if (it == generators.end()) {
            throw InputError("marked generator '" + marked + "' is not among the generators");
        }
        m = static_cast<int>(it - generators.begin());
    }
    Coordinates c = coordinates(v, generators.size());
    auto items = level_closure(v, c, generators, depth, m, cap,
                               "term classes of height " + std::to_string(depth));
    std::vector<TermClass> out;
    for (auto& item : items) {
        out.push_back({std::move(item.rep), std::move(item.vec), item.marked});
    }
    return out;
}

Variety semilattice_variety() {
    Signature sig = Signature::parse("meet/2");
    std::set<std::string> vars{"x", "y", "z"};
    std::vector<Identity> ids;
    for (const auto& [l, r] : {std::pair{"meet(x,x)", "x"}, std::pair{"meet(x,y)", "meet(y,x)"},
                               std::pair{"meet(x,meet(y,z))", "meet(meet(x,y),z)"}}) {
        ids.push_back({parse_term(l, sig, vars), parse_term(r, sig, vars)});
    }
    FiniteAlgebra sl2 = FiniteAlgebra::tabulate(
        sig, {"0", "1"}, [](std::size_t, std::span<const Element> a) { return a[0] & a[1]; }, "sl2");
    return make_variety(sig, std::move(ids), {sl2}, "semilattice");
}

std::vector<FiniteAlgebra> variety_members(const Variety& v, std::size_t max_size,
                                           const std::vector<FiniteAlgebra>& preferred,
                                           const ModelSearchOptions& options) {
    static std::mutex mutex;
    static std::map<std::string, std::vector<FiniteAlgebra>> cache;
    std::string key = v.sig.to_string() + (options.prune_iso ? "|iso" : "|all");
    for (const auto& id : v.identities) {
        key += "|" + print_identity(id);
    }
    std::vector<FiniteAlgebra> out;
    for (std::size_t n = 1; n <= max_size; ++n) {
        std::string size_key = key + "|" + std::to_string(n);
        std::vector<FiniteAlgebra> models;
        bool cached = false;
        {
            std::lock_guard<std::mutex> lock(mutex);
            auto it = cache.find(size_key);
            if (it != cache.end()) {
                models = it->second;
                cached = true;
            }
        }
        if (!cached) {
            models = enumerate_models(v.sig, v.identities, n, options);
            std::lock_guard<std::mutex> lock(mutex);
            cache.emplace(size_key, models);
        }
        for (std::size_t k = 0; k < models.size(); ++k) {
            FiniteAlgebra m = models[k].renamed("m" + std::to_string(n) + "." + std::to_string(k + 1));
            for (const auto& p : preferred) {
                if (p.size() == n && p.signature() == v.sig && are_isomorphic(p, m)) {
                    m = p;
                    break;
                }
            }
            out.push_back(std::move(m));
        }
    }
    return out;
}

} // namespace ualg
