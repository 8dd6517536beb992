#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ualg {

struct Symbol {
    std::string name;
    unsigned arity = 0;

    bool operator==(const Symbol&) const = default;
};

inline constexpr unsigned kMaxArity = 8;

bool is_identifier(std::string_view text);

/// Ordered list of operation symbols with fixed arities.
class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<Symbol> symbols);

    /// Parses the `name/arity name/arity ...` form used by the file formats.
    static Signature parse(std::string_view text);

    std::size_t size() const { return symbols_.size(); }
    const Symbol& operator[](std::size_t index) const { return symbols_[index]; }
    std::span<const Symbol> symbols() const { return symbols_; }

    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t index_of(std::string_view name) const;

    /// Indices of nullary symbols, in signature order.
    std::vector<std::size_t> constants() const;
    unsigned max_arity() const;

    std::string to_string() const;

    bool operator==(const Signature& other) const { return symbols_ == other.symbols_; }

private:
    std::vector<Symbol> symbols_;
    std::unordered_map<std::string, std::size_t> index_;
};

} // namespace ualg
