#pragma once

#include <string>

#include "ualg/completeness.hpp"

namespace ualg {

/// What a check was run on, echoed at the top of its report.
struct ReportHeader {
    std::string command;
    std::string algebra_path;
    std::string variety_path;
    CheckOptions options;
    /// Command line that reproduces the report.
    std::string replay;
};

std::string format_stats(const CheckStats& stats);

std::string format_witness(const CompletenessWitness& w, const FiniteAlgebra& b);
std::string format_witness(const InjectivityWitness& w, const FiniteAlgebra& b);

std::string completeness_report(const ReportHeader& h, const FiniteAlgebra& b, const Variety& v,
                                const CompletenessVerdict& verdict);
std::string injectivity_report(const ReportHeader& h, const FiniteAlgebra& b, const Variety& v,
                               const InjectivityVerdict& verdict);
std::string crosscheck_report(const ReportHeader& h, const FiniteAlgebra& b, const Variety& v,
                              const CrosscheckReport& r);

} // namespace ualg
