#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ualg/signature.hpp"

namespace ualg {

/// Immutable term over a signature and a set of named generators.
///
/// A term is either a generator (a leaf carrying a name) or an application of
/// a signature symbol to as many argument terms as the symbol's arity.
/// Subterms may be shared between terms; equality is structural.
class Term {
public:
    static Term generator(std::string name);
    static Term apply(const Signature& sig, std::size_t symbol, std::vector<Term> args);
    static Term apply(const Signature& sig, std::string_view symbol, std::vector<Term> args);

    bool is_generator() const { return node_->symbol == kGenerator; }
    /// Generator name, or the applied symbol's name.
    const std::string& name() const { return node_->name; }
    /// Index of the applied symbol in its signature. Undefined for generators.
    std::size_t symbol() const { return node_->symbol; }
    std::span<const Term> args() const { return node_->args; }

    /// Tree height; generators and constants have height 0.
    unsigned height() const { return node_->height; }
    std::size_t node_count() const { return node_->size; }
    std::size_t hash() const { return node_->hash; }

    /// Same head symbol applied to new arguments of the same count.
    Term with_args(std::vector<Term> args) const;

    bool mentions(std::string_view generator) const;
    void collect_generators(std::set<std::string>& out) const;

    friend bool operator==(const Term& a, const Term& b);
    /// Total order: height, then symbol/generator name, then arguments.
    friend bool operator<(const Term& a, const Term& b);

private:
    static constexpr std::size_t kGenerator = static_cast<std::size_t>(-1);

    struct Node {
        std::size_t symbol;
        std::string name;
        std::vector<Term> args;
        unsigned height;
        std::size_t size;
        std::size_t hash;
    };

    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

struct TermHash {
    std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// Canonical text form; nullary symbols print without parentheses.
std::string print_term(const Term& t);

/// Parses `term := ident | ident "(" ")" | ident "(" term ("," term)* ")"`.
///
/// Identifiers naming a symbol become applications; any other identifier must
/// be one of `generators`; that check runs after syntax and arity, so a
/// malformed term reports its shape first. Errors carry the 1-based column of
/// the offending token.
Term parse_term(std::string_view text, const Signature& sig, const std::set<std::string>& generators);

using Binding = std::map<std::string, Term, std::less<>>;

/// Simultaneous replacement of generators; images are not rewritten again.
Term substitute(const Term& t, const Binding& binding);

inline constexpr std::size_t kDefaultTermCap = 1'000'000;

/// Number of terms of height <= depth, saturating at SIZE_MAX.
std::size_t count_terms(const Signature& sig, std::size_t generator_count, unsigned depth);

/// All terms of height <= depth in canonical order: generators (given order),
/// then constants, then by height; within a height by symbol and then by the
/// lexicographic order of argument positions in this list.
std::vector<Term> enumerate_terms(const Signature& sig, std::span<const std::string> generators,
                                  unsigned depth, std::size_t cap = kDefaultTermCap);

} // namespace ualg
