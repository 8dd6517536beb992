#include "ualg/io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "ualg/error.hpp"

namespace ualg {

namespace {

struct Token {
    std::string_view text;
    std::size_t column;
};

bool is_space(char c) { return c == ' ' || c == '\t'; }

std::vector<Token> split(std::string_view line, std::size_t from) {
    std::vector<Token> out;
    std::size_t i = from;
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) {
            ++i;
        }
        std::size_t start = i;
        while (i < line.size() && !is_space(line[i])) {
            ++i;
        }
        if (i > start) {
            out.push_back({line.substr(start, i - start), start + 1});
        }
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && is_space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

bool is_label(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (is_space(c) || c == ',' || c == '=' || c == ':' || c == '\n' || c == '\r') {
            return false;
        }
    }
    return true;
}

struct Line {
    std::size_t number;
    std::string_view text;
    std::string_view key;
    /// 0-based offset of the text after the colon.
    std::size_t value_from;
};

/// Content lines split at their first colon.
std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        ++number;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        std::string_view body = trim(line);
        if (body.empty() || body.front() == '#') {
            continue;
        }
        auto colon = line.find(':');
        if (colon == std::string_view::npos) {
            throw ParseError("expected 'key: value'", number, static_cast<std::size_t>(body.data() - line.data()) + 1);
        }
        out.push_back({number, line, trim(line.substr(0, colon)), colon + 1});
    }
    return out;
}

std::size_t column_of(const Line& l, std::string_view part) {
    return static_cast<std::size_t>(part.data() - l.text.data()) + 1;
}

Signature parse_signature_line(const Line& l) {
    try {
        return Signature::parse(l.text.substr(l.value_from));
    } catch (const InputError& e) {
        throw ParseError(e.what(), l.number, l.value_from + 1);
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

FiniteAlgebra parse_algebra(std::string_view text, std::string name) {
    std::optional<Signature> sig;
    std::size_t sig_line = 1;
    std::vector<std::string> labels;
    bool have_carrier = false;
    std::map<std::string, Element, std::less<>> index;
    std::vector<std::vector<Element>> tables;
    std::vector<std::vector<char>> filled;
    std::vector<std::size_t> op_line;

    for (const auto& l : content_lines(text)) {
        if (l.key == "signature") {
            if (sig) {
                throw ParseError("duplicate signature line", l.number, 1);
            }
            sig = parse_signature_line(l);
            sig_line = l.number;
            continue;
        }
        if (l.key == "carrier") {
            if (have_carrier) {
                throw ParseError("duplicate carrier line", l.number, 1);
            }
            have_carrier = true;
            for (const auto& t : split(l.text, l.value_from)) {
                if (!is_label(t.text)) {
                    throw ParseError("invalid element label '" + std::string(t.text) + "'", l.number, t.column);
                }
                if (!index.emplace(std::string(t.text), static_cast<Element>(labels.size())).second) {
                    throw ParseError("duplicate element '" + std::string(t.text) + "'", l.number, t.column);
                }
                labels.emplace_back(t.text);
            }
            if (labels.empty()) {
                throw ParseError("the carrier is empty", l.number, l.value_from + 1);
            }
            continue;
        }
        if (l.key.substr(0, 3) == "op " || l.key.substr(0, 3) == "op\t") {
            if (!sig || !have_carrier) {
                throw ParseError("op line before the signature and carrier lines", l.number, 1);
            }
            std::string_view op_name = trim(l.key.substr(3));
            auto s = sig->find(op_name);
            if (!s) {
                throw ParseError("unknown symbol '" + std::string(op_name) + "'", l.number, column_of(l, op_name));
            }
            if (tables.empty()) {
                std::size_t n = labels.size();
                for (std::size_t k = 0; k < sig->size(); ++k) {
                    std::size_t cells = 1;
                    for (unsigned a = 0; a < (*sig)[k].arity; ++a) {
                        cells *= n;
                    }
                    tables.emplace_back(cells, 0);
                    filled.emplace_back(cells, 0);
                    op_line.push_back(0);
                }
            }
            if (op_line[*s]) {
                throw ParseError("duplicate op line for '" + std::string(op_name) + "'", l.number, 1);
            }
            op_line[*s] = l.number;
            unsigned arity = (*sig)[*s].arity;
            for (const auto& t : split(l.text, l.value_from)) {
                auto eq = t.text.find('=');
                if (eq == std::string_view::npos) {
                    throw ParseError("expected 'args=result', got '" + std::string(t.text) + "'", l.number, t.column);
                }
                std::string_view args = t.text.substr(0, eq);
                std::vector<std::string_view> parts;
                if (!args.empty()) {
                    std::size_t start = 0;
                    while (true) {
                        auto comma = args.find(',', start);
                        parts.push_back(args.substr(start, comma - start));
                        if (comma == std::string_view::npos) {
                            break;
                        }
                        start = comma + 1;
                    }
                }
                if (parts.size() != arity) {
                    throw ParseError("'" + std::string(op_name) + "' expects " + std::to_string(arity) +
                                         " argument(s), got " + std::to_string(parts.size()),
                                     l.number, t.column);
                }
                auto lookup = [&](std::string_view label) {
                    auto it = index.find(label);
                    if (it == index.end()) {
                        throw ParseError("unknown element '" + std::string(label) + "'", l.number,
                                         column_of(l, label));
                    }
                    return it->second;
                };
                std::size_t cell = 0;
                for (auto p : parts) {
                    cell = cell * labels.size() + lookup(p);
                }
                Element out = lookup(t.text.substr(eq + 1));
                if (filled[*s][cell]) {
                    throw ParseError("duplicate entry '" + std::string(args) + "'", l.number, t.column);
                }
                filled[*s][cell] = 1;
                tables[*s][cell] = out;
            }
            continue;
        }
        throw ParseError("unknown key '" + std::string(l.key) + "'", l.number, column_of(l, l.key));
    }
    if (!sig) {
        throw ParseError("missing signature line", 1, 1);
    }
    if (!have_carrier) {
        throw ParseError("missing carrier line", sig_line, 1);
    }
    if (tables.empty() && sig->size() > 0) {
        throw ParseError("missing op line for '" + (*sig)[0].name + "'", sig_line, 1);
    }
    for (std::size_t s = 0; s < sig->size(); ++s) {
        if (!op_line[s]) {
            throw ParseError("missing op line for '" + (*sig)[s].name + "'", sig_line, 1);
        }
        for (std::size_t cell = 0; cell < filled[s].size(); ++cell) {
            if (!filled[s][cell]) {
                std::string tuple;
                std::size_t rest = cell;
                std::vector<std::string> args((*sig)[s].arity);
                for (std::size_t a = args.size(); a-- > 0;) {
                    args[a] = labels[rest % labels.size()];
                    rest /= labels.size();
                }
                for (const auto& a : args) {
                    tuple += (tuple.empty() ? "" : ",") + a;
                }
                throw ParseError("op " + (*sig)[s].name + ": no entry for '" + tuple + "'", op_line[s], 1);
            }
        }
    }
    return FiniteAlgebra(*sig, std::move(labels), std::move(tables), std::move(name));
}

FiniteAlgebra load_algebra(const std::filesystem::path& path) {
    std::string text = read_file(path);
    try {
        return parse_algebra(text, path.stem().string());
    } catch (const ParseError& e) {
        throw ParseError(e.detail(), e.line(), e.column(), path.filename().string());
    }
}

std::string format_algebra(const FiniteAlgebra& alg) {
    const auto& sig = alg.signature();
    for (auto l : alg.labels()) {
        if (!is_label(l)) {
            throw InputError("label '" + std::string(l) + "' cannot be written to an algebra file");
        }
    }
    std::string out = "signature: " + sig.to_string() + "\ncarrier:";
    for (auto l : alg.labels()) {
        out += " " + std::string(l);
    }
    out += "\n";
    for (std::size_t s = 0; s < sig.size(); ++s) {
        out += "op " + sig[s].name + ":";
        for_each_tuple(sig[s].arity, alg.size(), [&](std::span<const Element> args) {
            std::string entry;
            for (std::size_t i = 0; i < args.size(); ++i) {
                entry += (i ? "," : "") + alg.label(args[i]);
            }
            out += " " + entry + "=" + alg.label(alg.apply(s, args));
        });
        out += "\n";
    }
    return out;
}

Variety parse_variety(std::string_view text, const std::filesystem::path& base_dir, std::string name) {
    std::optional<Signature> sig;
    std::vector<Identity> identities;
    std::vector<FiniteAlgebra> generating;
    std::vector<std::size_t> generating_line;
    for (const auto& l : content_lines(text)) {
        if (l.key == "signature") {
            if (sig) {
                throw ParseError("duplicate signature line", l.number, 1);
            }
            sig = parse_signature_line(l);
            continue;
        }
        if (!sig) {
            throw ParseError("the signature line must come first", l.number, 1);
        }
        std::string_view value = trim(l.text.substr(l.value_from));
        if (l.key == "identity") {
            auto eq = value.find('=');
            if (eq == std::string_view::npos) {
                throw ParseError("expected 'lhs = rhs'", l.number, column_of(l, value));
            }
            std::set<std::string> vars;
            for (std::size_t i = 0; i < value.size();) {
                if (std::isalpha(static_cast<unsigned char>(value[i])) || value[i] == '_') {
                    std::size_t start = i;
                    while (i < value.size() && (std::isalnum(static_cast<unsigned char>(value[i])) || value[i] == '_')) {
                        ++i;
                    }
                    std::string id(value.substr(start, i - start));
                    if (!sig->find(id)) {
                        vars.insert(id);
                    }
                } else {
                    ++i;
                }
            }
            auto side = [&](std::string_view part) {
                try {
                    return parse_term(part, *sig, vars);
                } catch (const ParseError& e) {
                    throw ParseError(e.detail(), l.number, column_of(l, part) + e.column() - 1);
                }
            };
            identities.push_back({side(value.substr(0, eq)), side(value.substr(eq + 1))});
            continue;
        }
        if (l.key == "generator-algebra") {
            if (value.empty()) {
                throw ParseError("expected a file name", l.number, l.value_from + 1);
            }
            std::filesystem::path path(value);
            if (path.is_relative()) {
                path = base_dir / path;
            }
            try {
                generating.push_back(load_algebra(path));
            } catch (const InputError& e) {
                throw ParseError(e.what(), l.number, column_of(l, value));
            }
            generating_line.push_back(l.number);
            continue;
        }
        throw ParseError("unknown key '" + std::string(l.key) + "'", l.number, column_of(l, l.key));
    }
    if (!sig) {
        throw ParseError("missing signature line", 1, 1);
    }
    for (std::size_t i = 0; i < generating.size(); ++i) {
        try {
            make_variety(*sig, identities, {generating[i]});
        } catch (const InputError& e) {
            throw ParseError(e.what(), generating_line[i], 1);
        }
    }
    return make_variety(*sig, std::move(identities), std::move(generating), std::move(name));
}

Variety load_variety(const std::filesystem::path& path) {
    std::string text = read_file(path);
    try {
        return parse_variety(text, path.parent_path(), path.stem().string());
    } catch (const ParseError& e) {
        throw ParseError(e.detail(), e.line(), e.column(), path.filename().string());
    }
}

} // namespace ualg
