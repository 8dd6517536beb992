#include "ualg/congruence.hpp"

#include <numeric>

#include "ualg/error.hpp"

namespace ualg {

namespace {

/// Renumbers blocks so that block ids follow the order of least elements.
std::vector<std::size_t> normalize(std::span<const std::size_t> raw) {
    std::vector<std::size_t> out(raw.size());
    std::vector<std::size_t> seen_ids;
    for (std::size_t e = 0; e < raw.size(); ++e) {
        std::size_t id = raw[e];
        std::size_t found = seen_ids.size();
        for (std::size_t k = 0; k < seen_ids.size(); ++k) {
            if (seen_ids[k] == id) {
                found = k;
                break;
            }
        }
        if (found == seen_ids.size()) {
            seen_ids.push_back(id);
        }
        out[e] = found;
    }
    return out;
}

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        if (b < a) {
            std::swap(a, b);
        }
        parent_[b] = a;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

} // namespace

bool is_compatible(const FiniteAlgebra& alg, std::span<const std::size_t> raw) {
    const auto& sig = alg.signature();
    std::size_t n = alg.size();
    std::vector<std::size_t> block_of = normalize(raw);
    // Any change within blocks is a chain of single-argument moves to the
    // block's first element.
    std::vector<Element> first(n, static_cast<Element>(n));
    for (Element e = n; e-- > 0;) {
        first[block_of[e]] = e;
    }
    std::vector<Element> other(sig.max_arity());
    for (std::size_t s = 0; s < sig.size(); ++s) {
        unsigned arity = sig[s].arity;
        bool ok = true;
        for_each_tuple(arity, n, [&](std::span<const Element> args) {
            if (!ok) {
                return;
            }
            std::size_t out_block = block_of[alg.apply(s, args)];
            std::copy(args.begin(), args.end(), other.begin());
            for (std::size_t i = 0; i < arity && ok; ++i) {
                other[i] = first[block_of[args[i]]];
                ok = block_of[alg.apply(s, std::span<const Element>(other.data(), arity))] == out_block;
                other[i] = args[i];
            }
        });
        if (!ok) {
            return false;
        }
    }
    return true;
}

Congruence::Congruence(FiniteAlgebra alg, std::vector<std::size_t> block_of) : alg_(std::move(alg)) {
    if (block_of.size() != alg_.size()) {
        throw InputError("partition does not cover the carrier");
    }
    block_of_ = normalize(block_of);
    if (!is_compatible(alg_, block_of_)) {
        throw InputError("partition is not compatible with the operations");
    }
    for (Element e = 0; e < alg_.size(); ++e) {
        std::size_t b = block_of_[e];
        if (b == blocks_.size()) {
            blocks_.emplace_back();
        }
        blocks_[b].push_back(e);
    }
}

Congruence Congruence::identity(const FiniteAlgebra& alg) {
    std::vector<std::size_t> ids(alg.size());
    std::iota(ids.begin(), ids.end(), 0);
    return Congruence(alg, std::move(ids));
}

Congruence congruence_generated(const FiniteAlgebra& alg, std::span<const ElementPair> pairs) {
    std::size_t n = alg.size();
    UnionFind uf(n);
    for (const auto& [a, b] : pairs) {
        if (a >= n || b >= n) {
            throw InputError("congruence generator outside the carrier");
        }
        uf.unite(a, b);
    }
    const auto& sig = alg.signature();
    std::vector<Element> shifted(sig.max_arity());
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t s = 0; s < sig.size(); ++s) {
            unsigned arity = sig[s].arity;
            if (arity == 0) {
                continue;
            }
            for_each_tuple(arity, n, [&](std::span<const Element> args) {
                Element out = alg.apply(s, args);
                for (std::size_t i = 0; i < arity; ++i) {
                    auto root = static_cast<Element>(uf.find(args[i]));
                    if (root == args[i]) {
                        continue;
                    }
                    std::copy(args.begin(), args.end(), shifted.begin());
                    shifted[i] = root;
                    if (uf.unite(out, alg.apply(s, std::span<const Element>(shifted.data(), arity)))) {
                        changed = true;
                    }
                }
            });
        }
    }
    std::vector<std::size_t> ids(n);
    for (std::size_t e = 0; e < n; ++e) {
        ids[e] = uf.find(e);
    }
    return Congruence(alg, std::move(ids));
}

Quotient quotient(const Congruence& c) {
    const auto& alg = c.algebra();
    std::vector<std::string> labels;
    for (const auto& block : c.blocks()) {
        labels.push_back(alg.label(block.front()));
    }
    std::vector<Element> args(alg.signature().max_arity());
    auto q = FiniteAlgebra::tabulate(alg.signature(), std::move(labels),
                                     [&](std::size_t s, std::span<const Element> blocks) {
                                         for (std::size_t i = 0; i < blocks.size(); ++i) {
                                             args[i] = c.blocks()[blocks[i]].front();
                                         }
                                         return static_cast<Element>(c.block_of(alg.apply(
                                             s, std::span<const Element>(args.data(), blocks.size()))));
                                     });
    std::vector<Element> proj(alg.size());
    for (Element e = 0; e < alg.size(); ++e) {
        proj[e] = static_cast<Element>(c.block_of(e));
    }
    return Quotient{q, Homomorphism{alg, q, std::move(proj)}};
}

std::vector<std::size_t> kernel_partition(std::span<const Element> map) {
    std::vector<std::size_t> raw(map.begin(), map.end());
    return normalize(raw);
}

} // namespace ualg
