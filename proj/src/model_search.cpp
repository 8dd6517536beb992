#include "ualg/model_search.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ualg/error.hpp"
#include "ualg/homomorphism.hpp"

namespace ualg {

namespace {

constexpr int kUnassigned = -1;
constexpr int kNone = -1;
constexpr std::size_t kRootEntry = static_cast<std::size_t>(-1);

/// Postfix form of a term over numbered variables.
struct Program {
    struct Node {
        int symbol;  // -1 for a variable
        int var;
        unsigned arity;
    };
    std::vector<Node> nodes;
};

void compile_into(const Term& t, const std::vector<std::string>& vars, Program& out) {
    if (t.is_generator()) {
        auto it = std::find(vars.begin(), vars.end(), t.name());
        out.nodes.push_back({-1, static_cast<int>(it - vars.begin()), 0});
        return;
    }
    for (const auto& a : t.args()) {
        compile_into(a, vars, out);
    }
    out.nodes.push_back({static_cast<int>(t.symbol()), 0, static_cast<unsigned>(t.args().size())});
}

struct SideResult {
    int value = kUnassigned;   // known value or kUnassigned
    int blocked = kNone;       // first cell the evaluation waits for
    bool root_blocked = false; // the only missing cell is the root
};

enum class Outcome { Done, Blocked, Force, Conflict };

class Search {
public:
    Search(const Signature& sig, const std::vector<Identity>& ids, std::size_t n, const ModelSearchOptions& options,
           ModelSearchStats& stats)
        : sig_(sig), n_(n), options_(options), stats_(stats) {
        std::size_t total = 0;
        for (std::size_t s = 0; s < sig.size(); ++s) {
            offset_.push_back(total);
            std::size_t cells = 1;
            for (unsigned k = 0; k < sig[s].arity; ++k) {
                cells *= n;
            }
            for (std::size_t idx = 0; idx < cells; ++idx) {
                cell_symbol_.push_back(s);
                cell_index_.push_back(idx);
            }
            total += cells;
        }
        value_.assign(total, kUnassigned);
        used_.assign(n, 0);
        watchers_.resize(total);
        build_order();

        for (const auto& id : ids) {
            Compiled c;
            c.vars = id.variables();
            compile_into(id.lhs, c.vars, c.lhs);
            compile_into(id.rhs, c.vars, c.rhs);
            std::size_t count = 1;
            for (std::size_t k = 0; k < c.vars.size(); ++k) {
                count *= n;
            }
            for (std::size_t a = 0; a < count; ++a) {
                instances_.push_back({static_cast<std::uint32_t>(identities_.size()), static_cast<std::uint32_t>(a)});
            }
            identities_.push_back(std::move(c));
        }
        watch_.assign(instances_.size(), kNone);
    }

    std::vector<FiniteAlgebra> run(const std::vector<Identity>& ids) {
        ids_ = &ids;
        // Initial pass: every instance either completes, forces, or waits.
        trail_.push_back({kRootEntry, {}});
        bool ok = true;
        for (std::uint32_t i = 0; i < instances_.size() && ok; ++i) {
            ok = handle(i);
        }
        ok = ok && propagate();
        if (ok) {
            dfs(0);
        }
        return std::move(models_);
    }

private:
    struct Compiled {
        std::vector<std::string> vars;
        Program lhs;
        Program rhs;
    };
    struct Instance {
        std::uint32_t identity;
        std::uint32_t assignment;
    };
    struct TrailEntry {
        std::size_t cell;
        std::vector<std::uint32_t> touched;
    };

    void build_order() {
        std::vector<std::size_t> constants;
        std::vector<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> keyed;
        for (std::size_t c = 0; c < value_.size(); ++c) {
            std::size_t s = cell_symbol_[c];
            if (sig_[s].arity == 0) {
                constants.push_back(c);
                continue;
            }
            std::size_t idx = cell_index_[c];
            std::size_t mx = 0;
            for (unsigned k = 0; k < sig_[s].arity; ++k) {
                mx = std::max(mx, idx % n_);
                idx /= n_;
            }
            keyed.emplace_back(mx, s, cell_index_[c], c);
        }
        std::sort(keyed.begin(), keyed.end());
        order_ = constants;
        for (const auto& k : keyed) {
            order_.push_back(std::get<3>(k));
        }
    }

    void cell_args(std::size_t cell, std::vector<Element>& args) const {
        unsigned arity = sig_[cell_symbol_[cell]].arity;
        args.resize(arity);
        std::size_t idx = cell_index_[cell];
        for (unsigned k = arity; k-- > 0;) {
            args[k] = static_cast<Element>(idx % n_);
            idx /= n_;
        }
    }

    SideResult eval(const Program& prog, const std::vector<int>& vars) {
        stack_.clear();
        SideResult r;
        for (std::size_t k = 0; k < prog.nodes.size(); ++k) {
            const auto& node = prog.nodes[k];
            if (node.symbol < 0) {
                stack_.push_back(vars[node.var]);
                continue;
            }
            std::size_t idx = 0;
            bool known = true;
            std::size_t base = stack_.size() - node.arity;
            for (std::size_t a = base; a < stack_.size(); ++a) {
                if (stack_[a] == kUnassigned) {
                    known = false;
                }
                idx = idx * n_ + static_cast<std::size_t>(stack_[a] < 0 ? 0 : stack_[a]);
            }
            stack_.resize(base);
            if (!known) {
                stack_.push_back(kUnassigned);
                continue;
            }
            std::size_t cell = offset_[node.symbol] + idx;
            int v = value_[cell];
            if (v == kUnassigned) {
                if (r.blocked == kNone) {
                    r.blocked = static_cast<int>(cell);
                    r.root_blocked = (k + 1 == prog.nodes.size());
                }
            }
            stack_.push_back(v);
        }
        r.value = stack_.back();
        return r;
    }

    Outcome evaluate(std::uint32_t i, int& cell, int& forced) {
        const auto& inst = instances_[i];
        const auto& c = identities_[inst.identity];
        vars_.resize(c.vars.size());
        std::size_t a = inst.assignment;
        for (std::size_t k = c.vars.size(); k-- > 0;) {
            vars_[k] = static_cast<int>(a % n_);
            a /= n_;
        }
        SideResult l = eval(c.lhs, vars_);
        SideResult r = eval(c.rhs, vars_);
        if (l.value != kUnassigned && r.value != kUnassigned) {
            return l.value == r.value ? Outcome::Done : Outcome::Conflict;
        }
        if (l.value != kUnassigned && r.root_blocked) {
            cell = r.blocked;
            forced = l.value;
            return Outcome::Force;
        }
        if (r.value != kUnassigned && l.root_blocked) {
            cell = l.blocked;
            forced = r.value;
            return Outcome::Force;
        }
        cell = l.value == kUnassigned ? l.blocked : r.blocked;
        return Outcome::Blocked;
    }

    /// Re-evaluates instance i; false on conflict.
    bool handle(std::uint32_t i) {
        int cell = kNone;
        int forced = kUnassigned;
        switch (evaluate(i, cell, forced)) {
        case Outcome::Done:
            watch_[i] = kNone;
            return true;
        case Outcome::Conflict:
            watch_[i] = kNone;
            return false;
        case Outcome::Force:
            queue_.emplace_back(static_cast<std::size_t>(cell), forced);
            [[fallthrough]];
        case Outcome::Blocked:
            watch_[i] = cell;
            watchers_[cell].push_back(i);
            return true;
        }
        return true;
    }

    void count_usage(std::size_t cell, int delta) {
        used_[value_[cell]] += delta;
        cell_args(cell, args_);
        for (auto a : args_) {
            used_[a] += delta;
        }
    }

    bool assign(std::size_t cell, int v) {
        value_[cell] = v;
        count_usage(cell, 1);
        trail_.push_back({cell, {}});
        std::vector<std::uint32_t> list;
        list.swap(watchers_[cell]);
        for (std::size_t k = 0; k < list.size(); ++k) {
            std::uint32_t i = list[k];
            if (watch_[i] != static_cast<int>(cell)) {
                continue;
            }
            trail_.back().touched.push_back(i);
            if (!handle(i)) {
                for (std::size_t rest = k + 1; rest < list.size(); ++rest) {
                    watchers_[cell].push_back(list[rest]);
                }
                return false;
            }
        }
        return true;
    }

    bool propagate() {
        while (!queue_.empty()) {
            auto [cell, v] = queue_.back();
            queue_.pop_back();
            if (value_[cell] != kUnassigned) {
                if (value_[cell] != v) {
                    queue_.clear();
                    return false;
                }
                continue;
            }
            if (!assign(cell, v)) {
                queue_.clear();
                return false;
            }
        }
        return true;
    }

    void undo(std::size_t size) {
        while (trail_.size() > size) {
            auto& entry = trail_.back();
            if (entry.cell != kRootEntry) {
                count_usage(entry.cell, -1);
                value_[entry.cell] = kUnassigned;
            }
            for (auto i : entry.touched) {
                watch_[i] = static_cast<int>(entry.cell);
                watchers_[entry.cell].push_back(i);
            }
            trail_.pop_back();
        }
    }

    void dfs(std::size_t from) {
        std::size_t next = order_.size();
        for (std::size_t k = from; k < order_.size(); ++k) {
            if (value_[order_[k]] == kUnassigned) {
                next = k;
                break;
            }
        }
        if (next == order_.size()) {
            emit();
            return;
        }
        std::size_t cell = order_[next];
        std::vector<int> candidates;
        if (options_.prune_iso) {
            // Elements not mentioned anywhere yet are interchangeable: one of
            // them stands for all.
            std::vector<char> used(n_, 0);
            for (std::size_t e = 0; e < n_; ++e) {
                used[e] = used_[e] > 0;
            }
            cell_args(cell, args_);
            for (auto a : args_) {
                used[a] = 1;
            }
            bool fresh_taken = false;
            for (std::size_t e = 0; e < n_; ++e) {
                if (used[e]) {
                    candidates.push_back(static_cast<int>(e));
                } else if (!fresh_taken) {
                    candidates.push_back(static_cast<int>(e));
                    fresh_taken = true;
                }
            }
        } else {
            for (std::size_t e = 0; e < n_; ++e) {
                candidates.push_back(static_cast<int>(e));
            }
        }
        for (int v : candidates) {
            if (++stats_.decisions > options_.node_cap) {
                throw CapExceeded("model search of size " + std::to_string(n_), options_.node_cap);
            }
            std::size_t mark = trail_.size();
            if (assign(cell, v) && propagate()) {
                dfs(next + 1);
            } else {
                ++stats_.conflicts;
                queue_.clear();
            }
            undo(mark);
        }
    }

    void emit() {
        ++stats_.complete_tables;
        std::vector<std::vector<Element>> tables(sig_.size());
        for (std::size_t c = 0; c < value_.size(); ++c) {
            tables[cell_symbol_[c]].push_back(static_cast<Element>(value_[c]));
        }
        std::vector<std::string> labels;
        for (std::size_t e = 0; e < n_; ++e) {
            labels.push_back(std::to_string(e));
        }
        FiniteAlgebra alg(sig_, std::move(labels), std::move(tables));
        if (options_.prune_iso) {
            auto form = canonical_form(alg);
            if (!seen_.insert(form.code).second) {
                return;
            }
        }
        if (first_failing_identity(alg, *ids_)) {
            throw InternalError("model search produced a table violating an identity");
        }
        models_.push_back(std::move(alg));
    }

    const Signature& sig_;
    std::size_t n_;
    ModelSearchOptions options_;
    ModelSearchStats& stats_;
    const std::vector<Identity>* ids_ = nullptr;

    std::vector<std::size_t> offset_;
    std::vector<std::size_t> cell_symbol_;
    std::vector<std::size_t> cell_index_;
    std::vector<int> value_;
    std::vector<std::size_t> order_;

    std::vector<Compiled> identities_;
    std::vector<Instance> instances_;
    std::vector<int> watch_;
    std::vector<std::vector<std::uint32_t>> watchers_;
    std::vector<TrailEntry> trail_;
    std::vector<std::pair<std::size_t, int>> queue_;

    std::vector<int> stack_;
    std::vector<int> vars_;
    std::vector<Element> args_;
    std::vector<int> used_;

    std::set<std::vector<Element>> seen_;
    std::vector<FiniteAlgebra> models_;
};

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h * 0xff51afd7ed558ccdULL;
}

/// Refines colours until stable; colours are ranks of invariant signatures.
std::vector<std::uint32_t> refine(const FiniteAlgebra& alg, std::vector<std::uint32_t> colors) {
    const auto& sig = alg.signature();
    std::size_t n = alg.size();
    std::size_t classes = std::set<std::uint32_t>(colors.begin(), colors.end()).size();
    while (true) {
        std::vector<std::vector<std::uint64_t>> occ(n);
        for (std::size_t s = 0; s < sig.size(); ++s) {
            for_each_tuple(sig[s].arity, n, [&](std::span<const Element> args) {
                Element out = alg.apply(s, args);
                std::uint64_t h = mix(s + 1, colors[out]);
                for (auto a : args) {
                    h = mix(h, colors[a]);
                }
                for (std::size_t i = 0; i < args.size(); ++i) {
                    occ[args[i]].push_back(mix(h, i + 1));
                }
                occ[out].push_back(mix(h, 0xffff));
            });
        }
        std::vector<std::pair<std::uint32_t, std::vector<std::uint64_t>>> keys(n);
        for (std::size_t e = 0; e < n; ++e) {
            std::sort(occ[e].begin(), occ[e].end());
            keys[e] = {colors[e], std::move(occ[e])};
        }
        auto sorted = keys;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<std::uint32_t> next(n);
        for (std::size_t e = 0; e < n; ++e) {
            next[e] = static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), keys[e]) -
                                                 sorted.begin());
        }
        colors = std::move(next);
        if (sorted.size() == classes) {
            return colors;
        }
        classes = sorted.size();
    }
}

std::vector<Element> encode(const FiniteAlgebra& alg, const std::vector<Element>& position) {
    std::size_t n = alg.size();
    std::vector<Element> inverse(n);
    for (std::size_t e = 0; e < n; ++e) {
        inverse[position[e]] = static_cast<Element>(e);
    }
    std::vector<Element> code{static_cast<Element>(n)};
    const auto& sig = alg.signature();
    std::vector<Element> args(sig.max_arity());
    for (std::size_t s = 0; s < sig.size(); ++s) {
        for_each_tuple(sig[s].arity, n, [&](std::span<const Element> pos) {
            for (std::size_t i = 0; i < pos.size(); ++i) {
                args[i] = inverse[pos[i]];
            }
            code.push_back(position[alg.apply(s, std::span<const Element>(args.data(), pos.size()))]);
        });
    }
    return code;
}

void canonical_search(const FiniteAlgebra& alg, std::vector<std::uint32_t> colors, CanonicalForm& best,
                      bool& have_best) {
    colors = refine(alg, std::move(colors));
    std::size_t n = alg.size();
    std::vector<std::size_t> count(n, 0);
    for (auto c : colors) {
        ++count[c];
    }
    std::size_t target = n;
    for (std::size_t c = 0; c < n; ++c) {
        if (count[c] > 1) {
            target = c;
            break;
        }
    }
    if (target == n) {
        std::vector<Element> position(colors.begin(), colors.end());
        auto code = encode(alg, position);
        if (!have_best || code < best.code) {
            best.code = std::move(code);
            best.position = std::move(position);
            have_best = true;
        }
        return;
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (colors[v] != target) {
            continue;
        }
        std::vector<std::uint32_t> split(n);
        for (std::size_t e = 0; e < n; ++e) {
            split[e] = 2 * colors[e] + ((colors[e] == target && e != v) ? 1 : 0);
        }
        canonical_search(alg, std::move(split), best, have_best);
    }
}

} // namespace

std::vector<FiniteAlgebra> enumerate_models(const Signature& sig, const std::vector<Identity>& identities,
                                            std::size_t size, const ModelSearchOptions& options,
                                            ModelSearchStats* stats) {
    if (size == 0) {
        throw InputError("model size must be at least 1");
    }
    ModelSearchStats local;
    Search search(sig, identities, size, options, stats ? *stats : local);
    return search.run(identities);
}

CanonicalForm canonical_form(const FiniteAlgebra& alg) {
    CanonicalForm best;
    bool have_best = false;
    canonical_search(alg, std::vector<std::uint32_t>(alg.size(), 0), best, have_best);
    return best;
}

bool are_isomorphic(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    if (!(a.signature() == b.signature()) || a.size() != b.size()) {
        return false;
    }
    return canonical_form(a) == canonical_form(b);
}

std::optional<std::vector<Element>> find_isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    if (!(a.signature() == b.signature()) || a.size() != b.size()) {
        return std::nullopt;
    }
    for (auto& h : enumerate_homs(a, b)) {
        if (h.injective()) {
            return std::move(h.map);
        }
    }
    return std::nullopt;
}

} // namespace ualg
