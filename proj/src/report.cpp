#include "ualg/report.hpp"

#include <sstream>

#include "ualg/error.hpp"
#include "ualg/io.hpp"

namespace ualg {

namespace {

constexpr std::size_t kShownConditions = 12;

std::string header_text(const ReportHeader& h, const FiniteAlgebra& b, const Variety& v) {
    std::ostringstream out;
    out << "command: " << h.command << "\n";
    out << "algebra: " << b.name() << " (" << h.algebra_path << ", size " << b.size() << ")\n";
    out << "variety: " << v.name << " (" << h.variety_path << ")\n";
    out << "max-size: " << h.options.size_bound << "\n";
    out << "depth: " << h.options.depth << "\n";
    return out.str();
}

std::string indent(const std::string& text, const std::string& prefix) {
    std::string out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        out += prefix + text.substr(pos, nl - pos) + "\n";
        pos = nl == std::string::npos ? text.size() : nl + 1;
    }
    return out;
}

std::string tables(const FiniteAlgebra& alg) {
    try {
        return format_algebra(alg);
    } catch (const InputError&) {
        std::string out = "carrier:";
        for (std::size_t e = 0; e < alg.size(); ++e) {
            out += " " + std::to_string(e) + "=" + alg.label(static_cast<Element>(e));
        }
        return out + "\n";
    }
}

std::string generator_list(const FiniteAlgebra& alg, const GeneratorMap& gens, const char* sep) {
    std::string out;
    for (const auto& [name, e] : gens) {
        out += (out.empty() ? "" : " ") + name + sep + alg.label(e);
    }
    return out.empty() ? "(none)" : out;
}

std::string map_text(const FiniteAlgebra& dom, const Subset& domain, const std::vector<Element>& images,
                     const FiniteAlgebra& cod) {
    std::string out;
    for (std::size_t i = 0; i < domain.size(); ++i) {
        out += (i ? " " : "") + dom.label(domain[i]) + "->" + cod.label(images[i]);
    }
    return out;
}

} // namespace

std::string format_stats(const CheckStats& s) {
    std::ostringstream out;
    out << "stats:\n";
    out << "  members: " << s.members << "\n";
    out << "  subalgebras: " << s.subalgebras << "\n";
    out << "  realized extensions: " << s.realized_extensions << "\n";
    out << "  constructed extensions: " << s.constructed_extensions << "\n";
    out << "  homomorphisms: " << s.homomorphisms << "\n";
    out << "  candidates: " << s.candidates << "\n";
    out << "  depth gaps: " << s.depth_gaps << "\n";
    out << "  skipped at cap: " << s.skipped << "\n";
    return out.str();
}

std::string format_witness(const CompletenessWitness& w, const FiniteAlgebra& b) {
    const auto& ext = w.extension;
    std::ostringstream out;
    out << "witness (completeness):\n";
    out << "  subalgebra: " << format_subset(b, w.sub) << "\n";
    out << "  origin: " << w.origin << "\n";
    out << "  ambient: " << ext.ambient.name() << ", size " << ext.ambient.size() << "\n";
    out << indent(tables(ext.ambient), "    ");
    out << "  base generators: " << generator_list(ext.ambient, ext.base_gens, "=") << "\n";
    out << "  adjoined element: x=" << ext.ambient.label(ext.ext_elem) << "\n";
    out << "  base map: " << generator_list(b, w.base_map, "->") << "\n";
    out << "  conditions: " << w.conditions.size() << "\n";
    for (std::size_t k = 0; k < w.conditions.size() && k < kShownConditions; ++k) {
        out << "    " << print_condition(w.conditions.condition(k)) << "\n";
    }
    if (w.conditions.size() > kShownConditions) {
        out << "    ... " << w.conditions.size() - kShownConditions << " more\n";
    }
    out << "  candidates:\n";
    for (std::size_t e = 0; e < w.violated.size(); ++e) {
        out << "    x=" << b.label(static_cast<Element>(e)) << ": ";
        if (w.violated[e]) {
            out << "violates " << print_condition(w.conditions.condition(*w.violated[e])) << "\n";
        } else {
            out << "meets the listed conditions but extends to no homomorphism\n";
        }
    }
    return out.str();
}

std::string format_witness(const InjectivityWitness& w, const FiniteAlgebra& b) {
    std::ostringstream out;
    out << "witness (injectivity):\n";
    out << "  member: " << w.member.name() << ", size " << w.member.size() << "\n";
    out << indent(tables(w.member), "    ");
    out << "  subalgebra: " << format_subset(w.member, w.sub) << "\n";
    out << "  homomorphism: " << map_text(w.member, w.sub, w.hom, b) << "\n";
    out << "  no homomorphism " << w.member.name() << " -> " << b.name() << " restricts to it\n";
    out << "  stuck adjoining " << w.member.label(w.step_elem) << " to " << format_subset(w.member, w.step_base)
        << " under " << map_text(w.member, w.step_base, w.step_map, b) << "\n";
    return out.str();
}

std::string completeness_report(const ReportHeader& h, const FiniteAlgebra& b, const Variety& v,
                                const CompletenessVerdict& verdict) {
    std::string out = header_text(h, b, v);
    out += std::string("verdict: ") + (verdict.passed ? "complete" : "not complete") + "\n";
    if (verdict.witness) {
        out += format_witness(*verdict.witness, b);
    }
    out += format_stats(verdict.stats);
    out += "replay: " + h.replay + "\n";
    return out;
}

std::string injectivity_report(const ReportHeader& h, const FiniteAlgebra& b, const Variety& v,
                               const InjectivityVerdict& verdict) {
    std::string out = header_text(h, b, v);
    out += std::string("verdict: ") + (verdict.passed ? "injective" : "not injective") + "\n";
    if (verdict.witness) {
        out += format_witness(*verdict.witness, b);
    }
    out += format_stats(verdict.stats);
    out += "replay: " + h.replay + "\n";
    return out;
}

std::string crosscheck_report(const ReportHeader& h, const FiniteAlgebra& b, const Variety& v,
                              const CrosscheckReport& r) {
    std::string out = header_text(h, b, v);
    std::string c = r.complete.passed ? "complete" : "not complete";
    std::string i = r.injective.passed ? "injective" : "not injective";
    out += std::string("verdicts ") + (r.agree ? "agree" : "disagree") + ": " + c + " ∧ " + i + "\n";
    if (r.agree && !r.complete.passed) {
        out += std::string("witnesses interconvert: ") + (r.witnesses_convert ? "yes" : "no") + "\n";
    }
    if (r.rerun_options) {
        out += "rerun at max-size " + std::to_string(r.rerun_options->size_bound) + ", depth " +
               std::to_string(r.rerun_options->depth) + ": " + (*r.rerun_complete ? "complete" : "not complete") +
               " ∧ " + (*r.rerun_injective ? "injective" : "not injective") + "\n";
    }
    if (r.complete.witness) {
        out += format_witness(*r.complete.witness, b);
    }
    if (r.injective.witness) {
        out += format_witness(*r.injective.witness, b);
    }
    out += "completeness " + format_stats(r.complete.stats);
    out += "injectivity " + format_stats(r.injective.stats);
    out += "replay: " + h.replay + "\n";
    return out;
}

} // namespace ualg
