#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/extension.hpp"
#include "ualg/variety.hpp"

namespace ualg {

/// plus/2 neg/1 zero/0
Signature group_signature();

std::vector<Identity> abelian_group_identities();

/// m-fold sum of x equals zero, summed as a balanced tree.
Identity exponent_identity(unsigned m);

/// Z_m1 x ... x Z_mk with elements in lexicographic tuple order. Labels are
/// residues for one factor and "(a,b)" tuples otherwise.
FiniteAlgebra cyclic_product_group(const std::vector<unsigned>& moduli, std::string name = {});

/// Abelian groups of exponent m, generated by Z_m (named "z<m>").
Variety exponent_variety(unsigned m);

/// All abelian groups; no generating algebras.
Variety abelian_group_variety();

/// A group term over A0 and x as n*x + sum of c_g * g.
struct LinearForm {
    std::int64_t x_coeff = 0;
    std::map<std::string, std::int64_t> coeffs;
};

LinearForm linearize(const Term& t);

/// n*x = a with n >= 0.
struct LinearCondition {
    std::int64_t n = 0;
    Element a = 0;
};

/// "n·x = a (x^n = a)": additive form, then multiplicative.
std::string print_linear_condition(const LinearCondition& lc, const FiniteAlgebra& g);

/// Integer multiple of an element, using neg for negative k.
Element multiple(const FiniteAlgebra& g, std::int64_t k, Element e);

/// (n_lhs - n_rhs)*x = c_rhs - c_lhs, negated if needed to make n >= 0.
LinearCondition normalize_condition(const ExtensionCondition& c, const FiniteAlgebra& g,
                                    const GeneratorMap& base_map);

/// Least solution in element order, if any.
std::optional<Element> solve_linear(const FiniteAlgebra& g, const LinearCondition& lc);

/// All (n, a) with 1 <= n <= n_max and n*x = a unsolvable.
std::vector<std::pair<std::int64_t, Element>> divisibility_report(const FiniteAlgebra& g, std::int64_t n_max);

/// Same, inside the groups of the given exponent m: n*x = a only counts when
/// some group of exponent m could solve it, i.e. (m / gcd(n, m)) * a = 0.
/// Exponent 0 means no restriction.
std::vector<std::pair<std::int64_t, Element>> divisibility_report(const FiniteAlgebra& g, std::int64_t n_max,
                                                                  std::int64_t exponent);

/// Element p/q of Q/Z in lowest terms with 0 <= p < q.
class QmodZ {
public:
    QmodZ() = default;
    QmodZ(std::int64_t p, std::int64_t q);

    std::int64_t numerator() const { return p_; }
    std::int64_t denominator() const { return q_; }

    QmodZ operator+(const QmodZ& o) const;
    QmodZ operator-() const;
    QmodZ times(std::int64_t n) const;
    bool operator==(const QmodZ&) const = default;

    std::string to_string() const;

private:
    std::int64_t p_ = 0;
    std::int64_t q_ = 1;
};

/// Some x with n*x = a: a/n for n >= 1; for n = 0 only a = 0 is solvable.
std::optional<QmodZ> solve_linear(std::int64_t n, const QmodZ& a);

} // namespace ualg
