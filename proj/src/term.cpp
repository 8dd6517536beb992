#include "ualg/term.hpp"

#include <cctype>
#include <functional>
#include <limits>
#include <optional>
#include <utility>

#include "ualg/error.hpp"

namespace ualg {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

} // namespace

Term Term::generator(std::string name) {
    if (!is_identifier(name)) {
        throw InputError("invalid generator name '" + name + "'");
    }
    auto h = mix(0x51ed27, std::hash<std::string>{}(name));
    return Term(std::make_shared<const Node>(Node{kGenerator, std::move(name), {}, 0, 1, h}));
}

Term Term::apply(const Signature& sig, std::size_t symbol, std::vector<Term> args) {
    if (symbol >= sig.size()) {
        throw InputError("symbol index out of range");
    }
    const auto& sym = sig[symbol];
    if (args.size() != sym.arity) {
        throw InputError("symbol '" + sym.name + "' expects " + std::to_string(sym.arity) +
                         " argument(s), got " + std::to_string(args.size()));
    }
    unsigned height = 0;
    std::size_t size = 1;
    std::size_t h = mix(0x3c6ef3, std::hash<std::string>{}(sym.name));
    for (const auto& a : args) {
        height = std::max(height, a.height() + 1);
        size += a.node_count();
        h = mix(h, a.hash());
    }
    return Term(std::make_shared<const Node>(Node{symbol, sym.name, std::move(args), height, size, h}));
}

Term Term::apply(const Signature& sig, std::string_view symbol, std::vector<Term> args) {
    return apply(sig, sig.index_of(symbol), std::move(args));
}

Term Term::with_args(std::vector<Term> args) const {
    if (is_generator() || args.size() != node_->args.size()) {
        throw InputError("with_args: argument count mismatch for '" + name() + "'");
    }
    unsigned height = 0;
    std::size_t size = 1;
    std::size_t h = mix(0x3c6ef3, std::hash<std::string>{}(name()));
    for (const auto& a : args) {
        height = std::max(height, a.height() + 1);
        size += a.node_count();
        h = mix(h, a.hash());
    }
    return Term(std::make_shared<const Node>(Node{node_->symbol, name(), std::move(args), height, size, h}));
}

bool Term::mentions(std::string_view generator) const {
    if (is_generator()) {
        return name() == generator;
    }
    for (const auto& a : args()) {
        if (a.mentions(generator)) {
            return true;
        }
    }
    return false;
}

void Term::collect_generators(std::set<std::string>& out) const {
    if (is_generator()) {
        out.insert(name());
        return;
    }
    for (const auto& a : args()) {
        a.collect_generators(out);
    }
}

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) {
        return true;
    }
    if (a.hash() != b.hash() || a.node_count() != b.node_count() || a.node_->symbol != b.node_->symbol ||
        a.name() != b.name()) {
        return false;
    }
    auto aa = a.args();
    auto ba = b.args();
    for (std::size_t i = 0; i < aa.size(); ++i) {
        if (!(aa[i] == ba[i])) {
            return false;
        }
    }
    return true;
}

bool operator<(const Term& a, const Term& b) {
    if (a.node_ == b.node_) {
        return false;
    }
    if (a.height() != b.height()) {
        return a.height() < b.height();
    }
    if (a.is_generator() != b.is_generator()) {
        return a.is_generator();
    }
    if (a.name() != b.name()) {
        return a.name() < b.name();
    }
    auto aa = a.args();
    auto ba = b.args();
    for (std::size_t i = 0; i < aa.size(); ++i) {
        if (aa[i] < ba[i]) {
            return true;
        }
        if (ba[i] < aa[i]) {
            return false;
        }
    }
    return false;
}

namespace {

void print_into(const Term& t, std::string& out) {
    out += t.name();
    if (t.is_generator() || t.args().empty()) {
        return;
    }
    out += '(';
    bool first = true;
    for (const auto& a : t.args()) {
        if (!first) {
            out += ',';
        }
        first = false;
        print_into(a, out);
    }
    out += ')';
}

class TermParser {
public:
    TermParser(std::string_view text, const Signature& sig, const std::set<std::string>& gens)
        : text_(text), sig_(sig), gens_(gens) {}

    Term parse() {
        Term t = term();
        skip_ws();
        if (pos_ != text_.size()) {
            fail("unexpected trailing input");
        }
        if (unknown_) {
            fail("unknown generator '" + unknown_->first + "'", unknown_->second);
        }
        return t;
    }

private:
    [[noreturn]] void fail(const std::string& message, std::size_t at) const {
        throw ParseError(message, 1, at + 1);
    }
    [[noreturn]] void fail(const std::string& message) const { fail(message, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(char c) {
        if (!peek(c)) {
            fail(std::string("expected '") + c + "'");
        }
        ++pos_;
    }

    std::string identifier() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size()) {
            auto c = static_cast<unsigned char>(text_[pos_]);
            if (std::isalpha(c) || c == '_') {
                ++pos_;
                while (pos_ < text_.size()) {
                    auto d = static_cast<unsigned char>(text_[pos_]);
                    if (!(std::isalnum(d) || d == '_')) {
                        break;
                    }
                    ++pos_;
                }
            }
        }
        if (start == pos_) {
            fail(pos_ == text_.size() ? "unexpected end of input, expected identifier" : "expected identifier");
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    Term term() {
        skip_ws();
        std::size_t start = pos_;
        std::string name = identifier();
        auto sym = sig_.find(name);
        if (peek('(')) {
            if (!sym) {
                fail("unknown symbol '" + name + "'", start);
            }
            ++pos_;
            std::vector<Term> args;
            if (!peek(')')) {
                args.push_back(term());
                while (peek(',')) {
                    ++pos_;
                    args.push_back(term());
                }
            }
            expect(')');
            if (args.size() != sig_[*sym].arity) {
                fail("arity mismatch: '" + name + "' expects " + std::to_string(sig_[*sym].arity) +
                         " argument(s), got " + std::to_string(args.size()),
                     start);
            }
            return Term::apply(sig_, *sym, std::move(args));
        }
        if (sym) {
            if (sig_[*sym].arity != 0) {
                fail("arity mismatch: '" + name + "' expects " + std::to_string(sig_[*sym].arity) +
                         " argument(s), got 0",
                     start);
            }
            return Term::apply(sig_, *sym, {});
        }
        if (gens_.count(name) == 0 && !unknown_) {
            unknown_.emplace(name, start);
        }
        return Term::generator(std::move(name));
    }

    std::string_view text_;
    const Signature& sig_;
    const std::set<std::string>& gens_;
    std::size_t pos_ = 0;
    std::optional<std::pair<std::string, std::size_t>> unknown_;
};

bool advance(std::vector<std::size_t>& idx, std::size_t limit) {
    for (std::size_t pos = idx.size(); pos-- > 0;) {
        if (++idx[pos] < limit) {
            return true;
        }
        idx[pos] = 0;
    }
    return false;
}

std::size_t sat_add(std::size_t a, std::size_t b) {
    return a > std::numeric_limits<std::size_t>::max() - b ? std::numeric_limits<std::size_t>::max() : a + b;
}

std::size_t sat_mul(std::size_t a, std::size_t b) {
    if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
        return std::numeric_limits<std::size_t>::max();
    }
    return a * b;
}

std::size_t sat_pow(std::size_t base, unsigned exp) {
    std::size_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        r = sat_mul(r, base);
    }
    return r;
}

} // namespace

std::string print_term(const Term& t) {
    std::string out;
    print_into(t, out);
    return out;
}

Term parse_term(std::string_view text, const Signature& sig, const std::set<std::string>& generators) {
    for (const auto& g : generators) {
        if (sig.find(g)) {
            throw InputError("generator '" + g + "' collides with a symbol name");
        }
    }
    return TermParser(text, sig, generators).parse();
}

Term substitute(const Term& t, const Binding& binding) {
    if (t.is_generator()) {
        auto it = binding.find(t.name());
        return it == binding.end() ? t : it->second;
    }
    if (t.args().empty()) {
        return t;
    }
    std::vector<Term> args;
    args.reserve(t.args().size());
    bool changed = false;
    for (const auto& a : t.args()) {
        args.push_back(substitute(a, binding));
        changed = changed || !(args.back() == a);
    }
    return changed ? t.with_args(std::move(args)) : t;
}

std::size_t count_terms(const Signature& sig, std::size_t generator_count, unsigned depth) {
    std::size_t base = sat_add(generator_count, sig.constants().size());
    std::size_t n = base;
    for (unsigned d = 0; d < depth; ++d) {
        std::size_t next = base;
        for (const auto& s : sig.symbols()) {
            if (s.arity > 0) {
                next = sat_add(next, sat_pow(n, s.arity));
            }
        }
        n = next;
    }
    return n;
}

std::vector<Term> enumerate_terms(const Signature& sig, std::span<const std::string> generators, unsigned depth,
                                  std::size_t cap) {
    std::size_t total = count_terms(sig, generators.size(), depth);
    if (total > cap) {
        throw CapExceeded("term enumeration at depth " + std::to_string(depth) + " (" +
                              (total == std::numeric_limits<std::size_t>::max() ? std::string("overflow")
                                                                                : std::to_string(total)) +
                              " terms)",
                          cap);
    }
    std::vector<Term> all;
    all.reserve(total);
    for (const auto& g : generators) {
        all.push_back(Term::generator(g));
    }
    for (auto c : sig.constants()) {
        all.push_back(Term::apply(sig, c, {}));
    }
    std::size_t prev_start = 0;
    std::size_t prev_end = all.size();
    for (unsigned h = 1; h <= depth; ++h) {
        for (std::size_t s = 0; s < sig.size(); ++s) {
            unsigned arity = sig[s].arity;
            if (arity == 0 || prev_end == 0) {
                continue;
            }
            std::vector<std::size_t> idx(arity, 0);
            while (true) {
                std::size_t mx = 0;
                for (auto i : idx) {
                    mx = std::max(mx, i);
                }
                if (mx >= prev_start) {
                    std::vector<Term> args;
                    args.reserve(arity);
                    for (auto i : idx) {
                        args.push_back(all[i]);
                    }
                    all.push_back(Term::apply(sig, s, std::move(args)));
                }
                if (!advance(idx, prev_end)) {
                    break;
                }
            }
        }
        prev_start = prev_end;
        prev_end = all.size();
    }
    return all;
}

} // namespace ualg
