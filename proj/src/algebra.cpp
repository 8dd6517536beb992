#include "ualg/algebra.hpp"

#include <algorithm>

#include "ualg/error.hpp"

namespace ualg {

Assignment to_assignment(const GeneratorMap& gens) {
    Assignment asg;
    for (const auto& [name, e] : gens) {
        asg[name] = e;
    }
    return asg;
}

FiniteAlgebra::FiniteAlgebra(Signature sig, std::vector<std::string> labels, std::vector<std::vector<Element>> tables,
                             std::string name) {
    if (labels.empty()) {
        throw InputError("algebra carrier must be non-empty");
    }
    if (tables.size() != sig.size()) {
        throw InputError("expected one table per symbol");
    }
    std::size_t n = labels.size();
    for (std::size_t i = 0; i < labels.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (labels[i] == labels[j]) {
                throw InputError("duplicate carrier label '" + labels[i] + "'");
            }
        }
    }
    for (std::size_t s = 0; s < sig.size(); ++s) {
        std::size_t cells = 1;
        for (unsigned k = 0; k < sig[s].arity; ++k) {
            cells *= n;
        }
        if (tables[s].size() != cells) {
            throw InputError("table for '" + sig[s].name + "' has " + std::to_string(tables[s].size()) +
                             " entries, expected " + std::to_string(cells));
        }
        for (auto v : tables[s]) {
            if (v >= n) {
                throw InputError("table for '" + sig[s].name + "' leaves the carrier");
            }
        }
    }
    data_ = std::make_shared<const Data>(Data{std::move(sig), std::move(labels), std::move(tables), std::move(name)});
}

FiniteAlgebra FiniteAlgebra::tabulate(Signature sig, std::vector<std::string> labels, const Builder& fn,
                                      std::string name) {
    std::size_t n = labels.size();
    std::vector<std::vector<Element>> tables;
    for (std::size_t s = 0; s < sig.size(); ++s) {
        std::vector<Element> table;
        for_each_tuple(sig[s].arity, n, [&](std::span<const Element> args) { table.push_back(fn(s, args)); });
        tables.push_back(std::move(table));
    }
    return FiniteAlgebra(std::move(sig), std::move(labels), std::move(tables), std::move(name));
}

FiniteAlgebra FiniteAlgebra::renamed(std::string name) const {
    FiniteAlgebra copy = *this;
    copy.data_ = std::make_shared<const Data>(Data{data_->sig, data_->labels, data_->tables, std::move(name)});
    return copy;
}

std::optional<Element> FiniteAlgebra::find_label(std::string_view label) const {
    for (std::size_t i = 0; i < data_->labels.size(); ++i) {
        if (data_->labels[i] == label) {
            return static_cast<Element>(i);
        }
    }
    return std::nullopt;
}

std::size_t FiniteAlgebra::table_index(std::span<const Element> args) const {
    std::size_t idx = 0;
    std::size_t n = size();
    for (auto a : args) {
        idx = idx * n + a;
    }
    return idx;
}

Element FiniteAlgebra::apply(std::size_t symbol, std::span<const Element> args) const {
    return data_->tables[symbol][table_index(args)];
}

bool FiniteAlgebra::same_tables(const FiniteAlgebra& other) const {
    return signature() == other.signature() && size() == other.size() && data_->tables == other.data_->tables;
}

Element eval_term(const Term& t, const FiniteAlgebra& alg, const Assignment& asg) {
    if (t.is_generator()) {
        auto it = asg.find(t.name());
        if (it == asg.end()) {
            throw InputError("generator '" + t.name() + "' is not assigned");
        }
        if (it->second >= alg.size()) {
            throw InputError("generator '" + t.name() + "' is assigned an element outside the carrier");
        }
        return it->second;
    }
    const auto& sig = alg.signature();
    if (t.symbol() >= sig.size() || sig[t.symbol()].name != t.name()) {
        throw InputError("symbol '" + t.name() + "' does not belong to the algebra's signature");
    }
    auto args = t.args();
    Element buf[4];
    std::vector<Element> heap;
    Element* vals = buf;
    if (args.size() > 4) {
        heap.resize(args.size());
        vals = heap.data();
    }
    for (std::size_t i = 0; i < args.size(); ++i) {
        vals[i] = eval_term(args[i], alg, asg);
    }
    return alg.apply(t.symbol(), std::span<const Element>(vals, args.size()));
}

Subset subalgebra_closure(const FiniteAlgebra& alg, std::span<const Element> seed) {
    if (seed.empty() && alg.signature().constants().empty()) {
        throw InputError("empty seed in a signature without constants generates the empty set");
    }
    std::size_t n = alg.size();
    std::vector<char> in(n, 0);
    Subset members;
    auto add = [&](Element e) {
        if (e >= n) {
            throw InputError("seed element outside the carrier");
        }
        if (!in[e]) {
            in[e] = 1;
            members.push_back(e);
        }
    };
    for (auto e : seed) {
        add(e);
    }
    const auto& sig = alg.signature();
    for (auto c : sig.constants()) {
        add(alg.constant(c));
    }
    // Semi-naive: only tuples touching an element added in the previous round.
    std::size_t done = 0;
    while (done < members.size()) {
        std::size_t frontier = members.size();
        Subset snapshot(members.begin(), members.end());
        for (std::size_t s = 0; s < sig.size(); ++s) {
            unsigned arity = sig[s].arity;
            if (arity == 0) {
                continue;
            }
            for_each_tuple(arity, snapshot.size(), [&](std::span<const Element> idx) {
                bool fresh = false;
                for (auto i : idx) {
                    fresh = fresh || i >= done;
                }
                if (!fresh) {
                    return;
                }
                Element args[8];
                for (std::size_t i = 0; i < arity; ++i) {
                    args[i] = snapshot[idx[i]];
                }
                add(alg.apply(s, std::span<const Element>(args, arity)));
            });
        }
        done = frontier;
    }
    std::sort(members.begin(), members.end());
    return members;
}

bool is_closed(const FiniteAlgebra& alg, std::span<const Element> subset) {
    std::vector<char> in(alg.size(), 0);
    for (auto e : subset) {
        in.at(e) = 1;
    }
    const auto& sig = alg.signature();
    for (std::size_t s = 0; s < sig.size(); ++s) {
        bool ok = true;
        for_each_tuple_from(sig[s].arity, subset, [&](std::span<const Element> args) {
            ok = ok && in[alg.apply(s, args)];
        });
        if (!ok) {
            return false;
        }
    }
    return true;
}

std::optional<Element> Subalgebra::local(Element parent) const {
    auto it = std::lower_bound(embedding.begin(), embedding.end(), parent);
    if (it == embedding.end() || *it != parent) {
        return std::nullopt;
    }
    return static_cast<Element>(it - embedding.begin());
}

Subalgebra restrict(const FiniteAlgebra& alg, std::span<const Element> subset, std::string name) {
    Subset sorted(subset.begin(), subset.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (!is_closed(alg, sorted)) {
        throw InputError("subset " + format_subset(alg, sorted) + " is not closed under the operations");
    }
    std::vector<Element> local(alg.size(), 0);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        local[sorted[i]] = static_cast<Element>(i);
        labels.push_back(alg.label(sorted[i]));
    }
    std::vector<Element> args(alg.signature().max_arity());
    auto sub = FiniteAlgebra::tabulate(
        alg.signature(), std::move(labels),
        [&](std::size_t s, std::span<const Element> local_args) {
            for (std::size_t i = 0; i < local_args.size(); ++i) {
                args[i] = sorted[local_args[i]];
            }
            return local[alg.apply(s, std::span<const Element>(args.data(), local_args.size()))];
        },
        std::move(name));
    return Subalgebra{std::move(sub), std::move(sorted)};
}

std::vector<Subset> enumerate_subalgebras(const FiniteAlgebra& alg) {
    std::size_t n = alg.size();
    if (n > 20) {
        throw CapExceeded("subalgebra enumeration over " + std::to_string(n) + " elements", 20);
    }
    std::vector<Subset> found;
    std::vector<Element> seed;
    std::uint64_t first = alg.signature().constants().empty() ? 1 : 0;
    for (std::uint64_t mask = first; mask < (std::uint64_t{1} << n); ++mask) {
        seed.clear();
        for (std::size_t i = 0; i < n; ++i) {
            if (mask >> i & 1U) {
                seed.push_back(static_cast<Element>(i));
            }
        }
        found.push_back(subalgebra_closure(alg, seed));
    }
    std::sort(found.begin(), found.end(), [](const Subset& a, const Subset& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

Subset minimal_generating_set(const FiniteAlgebra& alg, std::span<const Element> sub) {
    Subset target(sub.begin(), sub.end());
    std::sort(target.begin(), target.end());
    std::size_t m = target.size();
    // Subsets by size, each size in lexicographic order of chosen positions.
    std::size_t smallest = alg.signature().constants().empty() ? 1 : 0;
    for (std::size_t k = smallest; k <= m; ++k) {
        std::vector<std::size_t> pick(k);
        for (std::size_t i = 0; i < k; ++i) {
            pick[i] = i;
        }
        while (true) {
            Subset seed;
            for (auto p : pick) {
                seed.push_back(target[p]);
            }
            if (subalgebra_closure(alg, seed) == target) {
                return seed;
            }
            std::size_t i = k;
            while (i > 0 && pick[i - 1] == m - k + i - 1) {
                --i;
            }
            if (i == 0) {
                break;
            }
            ++pick[i - 1];
            for (std::size_t j = i; j < k; ++j) {
                pick[j] = pick[j - 1] + 1;
            }
        }
    }
    throw InputError("subset " + format_subset(alg, target) + " is not a subalgebra");
}

GeneratorMap name_generators(std::span<const Element> elements, std::string_view prefix) {
    GeneratorMap out;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        out.emplace_back(std::string(prefix) + std::to_string(i), elements[i]);
    }
    return out;
}

std::vector<std::optional<Term>> representatives(const FiniteAlgebra& alg, const GeneratorMap& gens) {
    std::vector<std::optional<Term>> rep(alg.size());
    std::vector<Element> order;
    auto offer = [&](Element e, const auto& make) {
        if (!rep[e]) {
            rep[e] = make();
            order.push_back(e);
        }
    };
    for (const auto& [name, e] : gens) {
        if (e >= alg.size()) {
            throw InputError("generator '" + name + "' is assigned an element outside the carrier");
        }
        offer(e, [&] { return Term::generator(name); });
    }
    const auto& sig = alg.signature();
    for (auto c : sig.constants()) {
        offer(alg.constant(c), [&] { return Term::apply(sig, c, {}); });
    }
    std::size_t prev_start = 0;
    while (prev_start < order.size()) {
        std::size_t prev_end = order.size();
        Subset pool(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(prev_end));
        for (std::size_t s = 0; s < sig.size(); ++s) {
            unsigned arity = sig[s].arity;
            if (arity == 0) {
                continue;
            }
            for_each_tuple(arity, prev_end, [&](std::span<const Element> idx) {
                bool fresh = false;
                for (auto i : idx) {
                    fresh = fresh || i >= prev_start;
                }
                if (!fresh) {
                    return;
                }
                Element args[8];
                for (std::size_t i = 0; i < arity; ++i) {
                    args[i] = pool[idx[i]];
                }
                Element r = alg.apply(s, std::span<const Element>(args, arity));
                offer(r, [&] {
                    std::vector<Term> targs;
                    for (std::size_t i = 0; i < arity; ++i) {
                        targs.push_back(*rep[args[i]]);
                    }
                    return Term::apply(sig, s, std::move(targs));
                });
            });
        }
        prev_start = prev_end;
    }
    return rep;
}

std::string format_subset(const FiniteAlgebra& alg, std::span<const Element> subset) {
    std::string out = "{";
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (i) {
            out += ',';
        }
        out += alg.label(subset[i]);
    }
    return out + "}";
}

} // namespace ualg
