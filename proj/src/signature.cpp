#include "ualg/signature.hpp"

#include <cctype>
#include <sstream>

#include "ualg/error.hpp"

namespace ualg {

bool is_identifier(std::string_view text) {
    if (text.empty()) {
        return false;
    }
    auto head = static_cast<unsigned char>(text.front());
    if (!(std::isalpha(head) || head == '_')) {
        return false;
    }
    for (char c : text) {
        auto u = static_cast<unsigned char>(c);
        if (!(std::isalnum(u) || u == '_')) {
            return false;
        }
    }
    return true;
}

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        const auto& name = symbols_[i].name;
        if (!is_identifier(name)) {
            throw InputError("invalid symbol name '" + name + "'");
        }
        if (symbols_[i].arity > kMaxArity) {
            throw InputError("symbol '" + name + "' exceeds the maximum arity " + std::to_string(kMaxArity));
        }
        if (!index_.emplace(name, i).second) {
            throw InputError("duplicate symbol '" + name + "'");
        }
    }
}

Signature Signature::parse(std::string_view text) {
    std::vector<Symbol> symbols;
    std::istringstream in{std::string(text)};
    std::string item;
    while (in >> item) {
        auto slash = item.find('/');
        if (slash == std::string::npos || slash + 1 == item.size()) {
            throw InputError("expected name/arity, got '" + item + "'");
        }
        Symbol sym;
        sym.name = item.substr(0, slash);
        auto digits = item.substr(slash + 1);
        for (char c : digits) {
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                throw InputError("bad arity in '" + item + "'");
            }
        }
        if (digits.size() > 2) {
            throw InputError("arity too large in '" + item + "'");
        }
        sym.arity = static_cast<unsigned>(std::stoul(digits));
        symbols.push_back(std::move(sym));
    }
    return Signature(std::move(symbols));
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::size_t Signature::index_of(std::string_view name) const {
    auto idx = find(name);
    if (!idx) {
        throw InputError("unknown symbol '" + std::string(name) + "'");
    }
    return *idx;
}

std::vector<std::size_t> Signature::constants() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i].arity == 0) {
            out.push_back(i);
        }
    }
    return out;
}

unsigned Signature::max_arity() const {
    unsigned m = 0;
    for (const auto& s : symbols_) {
        m = std::max(m, s.arity);
    }
    return m;
}

std::string Signature::to_string() const {
    std::string out;
    for (const auto& s : symbols_) {
        if (!out.empty()) {
            out += ' ';
        }
        out += s.name + "/" + std::to_string(s.arity);
    }
    return out;
}

} // namespace ualg
