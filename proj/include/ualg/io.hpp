#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ualg/algebra.hpp"
#include "ualg/variety.hpp"

namespace ualg {

/// Parses the line-oriented algebra format:
///
///     signature: and/2 or/2 not/1 zero/0 one/0
///     carrier: 0 1
///     op and: 0,0=0 0,1=0 1,0=0 1,1=1
///     op zero: =0
///
/// Blank lines and lines starting with '#' are skipped. Every symbol needs
/// exactly one op line listing every argument tuple once. Errors are
/// ParseErrors with 1-based line and column.
FiniteAlgebra parse_algebra(std::string_view text, std::string name = {});

/// Reads and parses a file; the algebra is named after the file stem.
FiniteAlgebra load_algebra(const std::filesystem::path& path);

/// The algebra in the format parse_algebra reads. Throws InputError for
/// labels the format cannot carry.
std::string format_algebra(const FiniteAlgebra& alg);

/// Parses a variety: a signature line, identity lines "lhs = rhs" whose
/// non-symbol identifiers are variables, and optional generator-algebra
/// lines naming algebra files relative to `base_dir`.
Variety parse_variety(std::string_view text, const std::filesystem::path& base_dir, std::string name = {});

Variety load_variety(const std::filesystem::path& path);

} // namespace ualg
