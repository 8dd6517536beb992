#include "ualg/homomorphism.hpp"

#include <algorithm>

#include "ualg/error.hpp"

namespace ualg {

bool Homomorphism::injective() const {
    std::vector<char> seen(cod.size(), 0);
    for (auto v : map) {
        if (seen[v]) {
            return false;
        }
        seen[v] = 1;
    }
    return true;
}

bool Homomorphism::surjective() const { return image().size() == cod.size(); }

Subset Homomorphism::image() const {
    Subset out(map.begin(), map.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

HomCheck is_homomorphism(std::span<const Element> map, const FiniteAlgebra& dom, const FiniteAlgebra& cod) {
    if (!(dom.signature() == cod.signature())) {
        throw InputError("homomorphism between algebras of different signatures");
    }
    if (map.size() != dom.size()) {
        throw InputError("candidate map is not total on the domain");
    }
    for (auto v : map) {
        if (v >= cod.size()) {
            throw InputError("candidate map leaves the codomain");
        }
    }
    const auto& sig = dom.signature();
    std::vector<Element> images(sig.max_arity());
    for (std::size_t s = 0; s < sig.size(); ++s) {
        std::optional<HomViolation> bad;
        for_each_tuple(sig[s].arity, dom.size(), [&](std::span<const Element> args) {
            if (bad) {
                return;
            }
            for (std::size_t i = 0; i < args.size(); ++i) {
                images[i] = map[args[i]];
            }
            if (map[dom.apply(s, args)] != cod.apply(s, std::span<const Element>(images.data(), args.size()))) {
                bad = HomViolation{s, std::vector<Element>(args.begin(), args.end())};
            }
        });
        if (bad) {
            return HomCheck{false, std::move(bad)};
        }
    }
    return HomCheck{};
}

std::optional<PartialMap> propagate_images(const FiniteAlgebra& dom, const FiniteAlgebra& cod, PartialMap seed) {
    PartialMap img = std::move(seed);
    img.resize(dom.size());
    const auto& sig = dom.signature();
    std::vector<Element> mapped;
    for (Element e = 0; e < dom.size(); ++e) {
        if (img[e]) {
            mapped.push_back(e);
        }
    }
    bool conflict = false;
    auto assign = [&](Element e, Element v) {
        if (!img[e]) {
            img[e] = v;
            mapped.push_back(e);
        } else if (*img[e] != v) {
            conflict = true;
        }
    };
    for (auto c : sig.constants()) {
        assign(dom.constant(c), cod.constant(c));
    }
    std::size_t done = 0;
    std::vector<Element> args(sig.max_arity());
    std::vector<Element> images(sig.max_arity());
    while (!conflict && done < mapped.size()) {
        std::size_t frontier = mapped.size();
        std::vector<Element> pool(mapped.begin(), mapped.begin() + static_cast<std::ptrdiff_t>(frontier));
        for (std::size_t s = 0; s < sig.size() && !conflict; ++s) {
            unsigned arity = sig[s].arity;
            if (arity == 0) {
                continue;
            }
            for_each_tuple(arity, frontier, [&](std::span<const Element> idx) {
                if (conflict) {
                    return;
                }
                bool fresh = false;
                for (auto i : idx) {
                    fresh = fresh || i >= done;
                }
                if (!fresh) {
                    return;
                }
                for (std::size_t i = 0; i < arity; ++i) {
                    args[i] = pool[idx[i]];
                    images[i] = *img[args[i]];
                }
                assign(dom.apply(s, std::span<const Element>(args.data(), arity)),
                       cod.apply(s, std::span<const Element>(images.data(), arity)));
            });
        }
        done = frontier;
    }
    if (conflict) {
        return std::nullopt;
    }
    return img;
}

std::vector<Homomorphism> enumerate_homs(const FiniteAlgebra& dom, const FiniteAlgebra& cod) {
    if (!(dom.signature() == cod.signature())) {
        throw InputError("homomorphisms between algebras of different signatures");
    }
    Subset all(dom.size());
    for (Element e = 0; e < dom.size(); ++e) {
        all[e] = e;
    }
    Subset gens = minimal_generating_set(dom, all);
    std::vector<Homomorphism> out;
    // Depth-first over generator images, propagating after each choice.
    auto search = [&](auto&& self, std::size_t k, const PartialMap& current) -> void {
        if (k == gens.size()) {
            std::vector<Element> map(dom.size());
            for (Element e = 0; e < dom.size(); ++e) {
                map[e] = *current[e];
            }
            out.push_back(Homomorphism{dom, cod, std::move(map)});
            return;
        }
        Element g = gens[k];
        if (current[g]) {
            // Forced by the earlier generators.
            self(self, k + 1, current);
            return;
        }
        for (Element v = 0; v < cod.size(); ++v) {
            PartialMap next = current;
            next[g] = v;
            if (auto closed = propagate_images(dom, cod, std::move(next))) {
                self(self, k + 1, *closed);
            }
        }
    };
    if (auto start = propagate_images(dom, cod, PartialMap(dom.size()))) {
        search(search, 0, *start);
    }
    return out;
}

Homomorphism identity_hom(const FiniteAlgebra& alg) {
    std::vector<Element> map(alg.size());
    for (Element e = 0; e < alg.size(); ++e) {
        map[e] = e;
    }
    return Homomorphism{alg, alg, std::move(map)};
}

Homomorphism compose(const Homomorphism& first, const Homomorphism& second) {
    if (first.cod.size() != second.dom.size()) {
        throw InputError("composing homomorphisms with mismatched carriers");
    }
    std::vector<Element> map(first.dom.size());
    for (Element e = 0; e < first.dom.size(); ++e) {
        map[e] = second.map[first.map[e]];
    }
    return Homomorphism{first.dom, second.cod, std::move(map)};
}

std::string format_map(const FiniteAlgebra& dom, const FiniteAlgebra& cod, std::span<const Element> map) {
    std::string out;
    for (std::size_t e = 0; e < map.size(); ++e) {
        if (!out.empty()) {
            out += ' ';
        }
        out += dom.label(static_cast<Element>(e)) + "->" + cod.label(map[e]);
    }
    return out;
}

} // namespace ualg
