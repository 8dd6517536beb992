#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ualg/signature.hpp"
#include "ualg/term.hpp"

namespace ualg {

/// Carrier elements are indices 0..n-1; labels live in a side table.
using Element = std::uint32_t;

/// Sorted list of carrier elements.
using Subset = std::vector<Element>;

/// Values of named generators.
using Assignment = std::map<std::string, Element, std::less<>>;

/// Ordered (generator name, element) list; the order fixes generator order.
using GeneratorMap = std::vector<std::pair<std::string, Element>>;

Assignment to_assignment(const GeneratorMap& gens);

/// Finite algebra given by one total operation table per signature symbol.
///
/// Tables are flat and row-major: the entry for f(a_0, ..., a_{k-1}) sits at
/// sum a_i * n^(k-1-i). Copies share the immutable table storage.
class FiniteAlgebra {
public:
    using Builder = std::function<Element(std::size_t symbol, std::span<const Element> args)>;

    FiniteAlgebra(Signature sig, std::vector<std::string> labels, std::vector<std::vector<Element>> tables,
                  std::string name = {});

    /// Tabulates `fn` over every argument tuple.
    static FiniteAlgebra tabulate(Signature sig, std::vector<std::string> labels, const Builder& fn,
                                  std::string name = {});

    const Signature& signature() const { return data_->sig; }
    std::size_t size() const { return data_->labels.size(); }
    const std::string& name() const { return data_->name; }
    FiniteAlgebra renamed(std::string name) const;

    const std::string& label(Element e) const { return data_->labels.at(e); }
    std::span<const std::string> labels() const { return data_->labels; }
    std::optional<Element> find_label(std::string_view label) const;

    std::span<const Element> table(std::size_t symbol) const { return data_->tables[symbol]; }
    Element apply(std::size_t symbol, std::span<const Element> args) const;
    Element constant(std::size_t symbol) const { return data_->tables[symbol][0]; }

    std::size_t table_index(std::span<const Element> args) const;

    /// Same tables, same signature (labels and names are ignored).
    bool same_tables(const FiniteAlgebra& other) const;

private:
    struct Data {
        Signature sig;
        std::vector<std::string> labels;
        std::vector<std::vector<Element>> tables;
        std::string name;
    };
    std::shared_ptr<const Data> data_;
};

/// Bottom-up evaluation; throws InputError on an uncovered generator, an
/// element outside the carrier, or a symbol foreign to the algebra.
Element eval_term(const Term& t, const FiniteAlgebra& alg, const Assignment& asg);

/// Least subset containing `seed` and every constant that is closed under all
/// tables. The seed may be empty only when the signature has constants.
Subset subalgebra_closure(const FiniteAlgebra& alg, std::span<const Element> seed);

bool is_closed(const FiniteAlgebra& alg, std::span<const Element> subset);

/// A subalgebra materialized as an algebra in its own right.
struct Subalgebra {
    FiniteAlgebra algebra;
    /// embedding[i] is the parent element corresponding to element i.
    std::vector<Element> embedding;

    std::optional<Element> local(Element parent) const;
};

/// Restriction of `alg` to a closed subset; labels are inherited.
Subalgebra restrict(const FiniteAlgebra& alg, std::span<const Element> subset, std::string name = {});

/// All non-empty subalgebras, ordered by size and then lexicographically.
std::vector<Subset> enumerate_subalgebras(const FiniteAlgebra& alg);

/// Lexicographically least among the smallest subsets generating `sub`.
Subset minimal_generating_set(const FiniteAlgebra& alg, std::span<const Element> sub);

/// Names g0, g1, ... bound to `elements`.
GeneratorMap name_generators(std::span<const Element> elements, std::string_view prefix = "g");

/// Lowest-height representative term for every element reachable from the
/// generators (nullopt for unreachable ones). Ties resolve to the first term
/// found in canonical enumeration order.
std::vector<std::optional<Term>> representatives(const FiniteAlgebra& alg, const GeneratorMap& gens);

std::string format_subset(const FiniteAlgebra& alg, std::span<const Element> subset);

/// Iterates over all tuples in [0, limit)^arity in lexicographic order.
template <class Fn>
void for_each_tuple(std::size_t arity, std::size_t limit, Fn&& fn) {
    std::vector<Element> tuple(arity, 0);
    if (arity > 0 && limit == 0) {
        return;
    }
    while (true) {
        fn(std::span<const Element>(tuple));
        std::size_t pos = arity;
        while (pos > 0) {
            --pos;
            if (++tuple[pos] < limit) {
                break;
            }
            tuple[pos] = 0;
            if (pos == 0) {
                return;
            }
        }
        if (arity == 0) {
            return;
        }
    }
}

/// Iterates over all tuples drawn from `pool` in lexicographic position order.
template <class Fn>
void for_each_tuple_from(std::size_t arity, std::span<const Element> pool, Fn&& fn) {
    std::vector<Element> tuple(arity);
    for_each_tuple(arity, pool.size(), [&](std::span<const Element> idx) {
        for (std::size_t i = 0; i < arity; ++i) {
            tuple[i] = pool[idx[i]];
        }
        fn(std::span<const Element>(tuple));
    });
}

} // namespace ualg
