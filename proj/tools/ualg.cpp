#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "ualg/completeness.hpp"
#include "ualg/error.hpp"
#include "ualg/io.hpp"
#include "ualg/report.hpp"
#include "ualg/term.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;
constexpr int kCapExhausted = 3;

struct CheckArgs {
    std::string algebra;
    std::string variety;
    std::size_t max_size = 4;
    unsigned depth = 2;
    std::string report;
    std::size_t free_cap = ualg::kDefaultFreeCap;
    std::uint64_t node_cap = ualg::ModelSearchOptions{}.node_cap;
};

std::string quoted(const std::string& arg) {
    if (arg.find_first_of(" \t'\"\\$") == std::string::npos) {
        return arg;
    }
    std::string out = "'";
    for (char c : arg) {
        out += c == '\'' ? std::string("'\\''") : std::string(1, c);
    }
    return out + "'";
}

std::string replay_line(const std::string& command, const CheckArgs& a) {
    std::string out = "ualg " + command + " --algebra " + quoted(a.algebra) + " --variety " + quoted(a.variety) +
                      " --max-size " + std::to_string(a.max_size) + " --depth " + std::to_string(a.depth);
    if (a.free_cap != ualg::kDefaultFreeCap) {
        out += " --free-cap " + std::to_string(a.free_cap);
    }
    if (a.node_cap != ualg::ModelSearchOptions{}.node_cap) {
        out += " --node-cap " + std::to_string(a.node_cap);
    }
    return out;
}

void add_check_options(CLI::App* cmd, CheckArgs& a) {
    cmd->add_option("--algebra", a.algebra, "Algebra file")->required();
    cmd->add_option("--variety", a.variety, "Variety file")->required();
    cmd->add_option("--max-size", a.max_size, "Largest variety member searched")->capture_default_str();
    cmd->add_option("--depth", a.depth, "Condition term height")->capture_default_str();
    cmd->add_option("--report", a.report, "Also write the report to this file");
    cmd->add_option("--free-cap", a.free_cap, "Largest free algebra built")->capture_default_str();
    cmd->add_option("--node-cap", a.node_cap, "Model search decision budget")->capture_default_str();
}

void emit(const std::string& text, const std::string& path) {
    std::cout << text;
    if (!path.empty()) {
        std::ofstream out(path);
        if (!out) {
            throw ualg::InputError("cannot write " + path);
        }
        out << text;
    }
}

int run_eval(const std::string& algebra_path, const std::string& term_text, const std::vector<std::string>& binds) {
    auto alg = ualg::load_algebra(algebra_path);
    ualg::Assignment asg;
    std::set<std::string> names;
    for (const auto& b : binds) {
        auto eq = b.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ualg::InputError("binding '" + b + "' is not NAME=ELEM");
        }
        auto name = b.substr(0, eq);
        auto e = alg.find_label(b.substr(eq + 1));
        if (!e) {
            throw ualg::InputError("binding '" + b + "': no element '" + b.substr(eq + 1) + "' in " + alg.name());
        }
        if (!names.insert(name).second) {
            throw ualg::InputError("generator '" + name + "' bound twice");
        }
        asg.insert_or_assign(name, *e);
    }
    auto t = ualg::parse_term(term_text, alg.signature(), names);
    std::cout << alg.label(ualg::eval_term(t, alg, asg)) << "\n";
    return kPass;
}

struct Loaded {
    ualg::FiniteAlgebra b;
    ualg::Variety v;
};

Loaded load_inputs(const CheckArgs& a) {
    auto b = ualg::load_algebra(a.algebra);
    auto v = ualg::load_variety(a.variety);
    if (b.signature() != v.sig) {
        throw ualg::InputError(b.name() + " has signature " + b.signature().to_string() + " but " + v.name +
                               " has " + v.sig.to_string());
    }
    if (auto bad = ualg::first_failing_identity(b, v.identities)) {
        throw ualg::InputError(b.name() + " violates " + ualg::print_identity(v.identities[*bad]));
    }
    return {std::move(b), std::move(v)};
}

ualg::CheckOptions options_of(const CheckArgs& a) {
    ualg::CheckOptions o;
    o.size_bound = a.max_size;
    o.depth = a.depth;
    o.free_cap = a.free_cap;
    o.search.node_cap = a.node_cap;
    return o;
}

/// Enumerates members size by size so a cap reports what was found first.
void enumerate_members(const Loaded& in, const CheckArgs& a) {
    std::vector<std::size_t> counts;
    try {
        std::size_t total = 0;
        for (std::size_t n = 1; n <= a.max_size; ++n) {
            auto found = ualg::variety_members(in.v, n, {}, options_of(a).search).size();
            counts.push_back(found - total);
            total = found;
        }
    } catch (const ualg::CapExceeded&) {
        std::cout << "partial statistics:\n";
        for (std::size_t n = 0; n < counts.size(); ++n) {
            std::cout << "  members of size " << n + 1 << ": " << counts[n] << "\n";
        }
        std::cout << "  members of size " << counts.size() + 1 << ": search abandoned\n";
        throw;
    }
}

int run_check(const std::string& command, const CheckArgs& a) {
    auto in = load_inputs(a);
    enumerate_members(in, a);
    ualg::ReportHeader h{command, a.algebra, a.variety, options_of(a), replay_line(command, a)};
    if (command == "check-complete") {
        auto verdict = ualg::is_complete_upto(in.b, in.v, h.options);
        emit(ualg::completeness_report(h, in.b, in.v, verdict), a.report);
        return verdict.passed ? kPass : kCheckFailed;
    }
    if (command == "check-injective") {
        auto verdict = ualg::is_injective_upto(in.b, in.v, h.options);
        emit(ualg::injectivity_report(h, in.b, in.v, verdict), a.report);
        return verdict.passed ? kPass : kCheckFailed;
    }
    auto r = ualg::crosscheck_prop3(in.b, in.v, h.options);
    emit(ualg::crosscheck_report(h, in.b, in.v, r), a.report);
    bool pass = r.agree && r.complete.passed && r.injective.passed;
    return pass ? kPass : kCheckFailed;
}

int run_free(const std::string& variety_path, std::size_t gens, std::size_t cap, bool tables) {
    auto v = ualg::load_variety(variety_path);
    if (!v.has_generating_algebras()) {
        throw ualg::InputError(v.name + " lists no generating algebras");
    }
    auto f = ualg::free_algebra(v, gens, cap);
    std::cout << f.algebra.size() << "\n";
    if (tables) {
        const auto& alg = f.algebra;
        for (std::size_t e = 0; e < alg.size(); ++e) {
            std::cout << "  " << e << ": " << alg.label(static_cast<ualg::Element>(e)) << "\n";
        }
        const auto& sig = alg.signature();
        for (std::size_t s = 0; s < sig.size(); ++s) {
            std::cout << "op " << sig[s].name << ":";
            ualg::for_each_tuple(sig[s].arity, alg.size(), [&](std::span<const ualg::Element> args) {
                std::string entry;
                for (std::size_t i = 0; i < args.size(); ++i) {
                    entry += (i ? "," : "") + std::to_string(args[i]);
                }
                std::cout << " " << entry << "=" << alg.apply(s, args);
            });
            std::cout << "\n";
        }
    }
    return kPass;
}

int run_members(const std::string& variety_path, std::size_t size, std::uint64_t node_cap, bool tables) {
    auto v = ualg::load_variety(variety_path);
    ualg::ModelSearchOptions o;
    o.node_cap = node_cap;
    auto models = ualg::enumerate_models(v.sig, v.identities, size, o);
    std::cout << models.size() << "\n";
    if (tables) {
        for (std::size_t k = 0; k < models.size(); ++k) {
            std::cout << "# m" << size << "." << k + 1 << "\n" << ualg::format_algebra(models[k]);
        }
    }
    return kPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Complete universal algebras and injectivity, checked on finite models"};
    app.require_subcommand(1);

    std::string algebra_path;
    std::string term_text;
    std::vector<std::string> binds;
    auto* eval = app.add_subcommand("eval", "Evaluate a term in an algebra");
    eval->add_option("--algebra", algebra_path, "Algebra file")->required();
    eval->add_option("--term", term_text, "Term to evaluate")->required();
    eval->add_option("--bind", binds, "Generator binding NAME=ELEM");

    CheckArgs check;
    std::vector<std::pair<std::string, CLI::App*>> checks;
    for (const char* name : {"check-complete", "check-injective", "crosscheck"}) {
        const char* help = std::string(name) == "check-complete"    ? "Check closure under simple extensions"
                           : std::string(name) == "check-injective" ? "Check injectivity against variety members"
                                                                    : "Run both checks and compare verdicts";
        auto* cmd = app.add_subcommand(name, help);
        add_check_options(cmd, check);
        checks.emplace_back(name, cmd);
    }

    std::string variety_path;
    std::size_t gens = 1;
    std::size_t free_cap = ualg::kDefaultFreeCap;
    bool tables = false;
    auto* free = app.add_subcommand("free", "Size of the free algebra on k generators");
    free->add_option("--variety", variety_path, "Variety file")->required();
    free->add_option("--gens", gens, "Number of generators")->required();
    free->add_option("--cap", free_cap, "Largest free algebra built")->capture_default_str();
    free->add_flag("--tables", tables, "Print elements and operation tables");

    std::size_t size = 1;
    std::uint64_t node_cap = ualg::ModelSearchOptions{}.node_cap;
    auto* members = app.add_subcommand("members", "Count models of a variety up to isomorphism");
    members->add_option("--variety", variety_path, "Variety file")->required();
    members->add_option("--size", size, "Carrier size")->required();
    members->add_option("--node-cap", node_cap, "Model search decision budget")->capture_default_str();
    members->add_flag("--tables", tables, "Print each model");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kInputError;
    }

    try {
        if (*eval) {
            return run_eval(algebra_path, term_text, binds);
        }
        for (const auto& [name, cmd] : checks) {
            if (*cmd) {
                return run_check(name, check);
            }
        }
        if (*free) {
            return run_free(variety_path, gens, free_cap, tables);
        }
        return run_members(variety_path, size, node_cap, tables);
    } catch (const ualg::CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kCapExhausted;
    } catch (const ualg::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const ualg::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
