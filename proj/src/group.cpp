#include "ualg/group.hpp"

#include <numeric>
#include <set>

#include "ualg/error.hpp"

namespace ualg {

namespace {

enum : std::size_t { kPlus, kNeg, kZero };

Term sum_of(const Signature& sig, const Term& x, unsigned m) {
    if (m == 1) {
        return x;
    }
    return Term::apply(sig, kPlus, {sum_of(sig, x, m / 2), sum_of(sig, x, m - m / 2)});
}

Element plus(const FiniteAlgebra& g, Element a, Element b) {
    Element args[2] = {a, b};
    return g.apply(g.signature().index_of("plus"), args);
}

Element neg(const FiniteAlgebra& g, Element a) {
    Element args[1] = {a};
    return g.apply(g.signature().index_of("neg"), args);
}

Element zero(const FiniteAlgebra& g) { return g.constant(g.signature().index_of("zero")); }

void accumulate(const Term& t, std::int64_t sign, LinearForm& f) {
    if (t.is_generator()) {
        if (t.name() == kExtensionVariable) {
            f.x_coeff += sign;
        } else {
            f.coeffs[t.name()] += sign;
        }
        return;
    }
    if (t.name() == "plus") {
        accumulate(t.args()[0], sign, f);
        accumulate(t.args()[1], sign, f);
    } else if (t.name() == "neg") {
        accumulate(t.args()[0], -sign, f);
    } else if (t.name() != "zero") {
        throw InputError("'" + t.name() + "' is not a group operation");
    }
}

} // namespace

Signature group_signature() { return Signature::parse("plus/2 neg/1 zero/0"); }

std::vector<Identity> abelian_group_identities() {
    static const char* const laws[][2] = {
        {"plus(x,y)", "plus(y,x)"},
        {"plus(x,plus(y,z))", "plus(plus(x,y),z)"},
        {"plus(x,zero)", "x"},
        {"plus(x,neg(x))", "zero"},
    };
    Signature sig = group_signature();
    std::set<std::string> vars{"x", "y", "z"};
    std::vector<Identity> out;
    for (const auto& law : laws) {
        out.push_back({parse_term(law[0], sig, vars), parse_term(law[1], sig, vars)});
    }
    return out;
}

Identity exponent_identity(unsigned m) {
    if (m == 0) {
        throw InputError("exponent must be positive");
    }
    Signature sig = group_signature();
    return {sum_of(sig, Term::generator("x"), m), Term::apply(sig, kZero, {})};
}

FiniteAlgebra cyclic_product_group(const std::vector<unsigned>& moduli, std::string name) {
    std::size_t n = 1;
    for (auto m : moduli) {
        if (m == 0) {
            throw InputError("moduli must be positive");
        }
        n *= m;
    }
    auto digits = [&](Element e) {
        std::vector<unsigned> d(moduli.size());
        for (std::size_t i = moduli.size(); i-- > 0;) {
            d[i] = e % moduli[i];
            e /= moduli[i];
        }
        return d;
    };
    auto index = [&](const std::vector<unsigned>& d) {
        Element e = 0;
        for (std::size_t i = 0; i < moduli.size(); ++i) {
            e = e * moduli[i] + d[i];
        }
        return e;
    };
    std::vector<std::string> labels;
    for (Element e = 0; e < n; ++e) {
        auto d = digits(e);
        if (moduli.size() == 1) {
            labels.push_back(std::to_string(d[0]));
            continue;
        }
        std::string label = "(";
        for (std::size_t i = 0; i < d.size(); ++i) {
            label += (i ? "," : "") + std::to_string(d[i]);
        }
        labels.push_back(label + ")");
    }
    if (name.empty()) {
        name = "Z";
        for (std::size_t i = 0; i < moduli.size(); ++i) {
            name += (i ? "x" : "") + std::to_string(moduli[i]);
        }
    }
    return FiniteAlgebra::tabulate(
        group_signature(), std::move(labels),
        [&](std::size_t s, std::span<const Element> a) -> Element {
            std::vector<unsigned> out(moduli.size(), 0);
            if (s == kZero) {
                return index(out);
            }
            auto x = digits(a[0]);
            if (s == kNeg) {
                for (std::size_t i = 0; i < out.size(); ++i) {
                    out[i] = (moduli[i] - x[i]) % moduli[i];
                }
                return index(out);
            }
            auto y = digits(a[1]);
            for (std::size_t i = 0; i < out.size(); ++i) {
                out[i] = (x[i] + y[i]) % moduli[i];
            }
            return index(out);
        },
        std::move(name));
}

Variety exponent_variety(unsigned m) {
    auto ids = abelian_group_identities();
    ids.push_back(exponent_identity(m));
    return make_variety(group_signature(), std::move(ids), {cyclic_product_group({m}, "z" + std::to_string(m))},
                        "exponent-" + std::to_string(m));
}

Variety abelian_group_variety() { return make_variety(group_signature(), abelian_group_identities(), {}, "abelian"); }

LinearForm linearize(const Term& t) {
    LinearForm f;
    accumulate(t, 1, f);
    return f;
}

std::string print_linear_condition(const LinearCondition& lc, const FiniteAlgebra& g) {
    auto n = std::to_string(lc.n);
    auto a = g.label(lc.a);
    return n + "·x = " + a + " (x^" + n + " = " + a + ")";
}

Element multiple(const FiniteAlgebra& g, std::int64_t k, Element e) {
    if (k < 0) {
        return neg(g, multiple(g, -k, e));
    }
    Element acc = zero(g);
    for (std::int64_t i = 0; i < k; ++i) {
        acc = plus(g, acc, e);
    }
    return acc;
}

LinearCondition normalize_condition(const ExtensionCondition& c, const FiniteAlgebra& g,
                                    const GeneratorMap& base_map) {
    LinearForm l = linearize(c.lhs);
    LinearForm r = linearize(c.rhs);
    Assignment asg = to_assignment(base_map);
    auto value = [&](const LinearForm& f) {
        Element acc = zero(g);
        for (const auto& [name, k] : f.coeffs) {
            auto it = asg.find(name);
            if (it == asg.end()) {
                throw InputError("base map does not cover generator '" + name + "'");
            }
            acc = plus(g, acc, multiple(g, k, it->second));
        }
        return acc;
    };
    LinearCondition lc{l.x_coeff - r.x_coeff, plus(g, value(r), neg(g, value(l)))};
    if (lc.n < 0) {
        lc.n = -lc.n;
        lc.a = neg(g, lc.a);
    }
    return lc;
}

std::optional<Element> solve_linear(const FiniteAlgebra& g, const LinearCondition& lc) {
    for (Element e = 0; e < g.size(); ++e) {
        if (multiple(g, lc.n, e) == lc.a) {
            return e;
        }
    }
    return std::nullopt;
}

std::vector<std::pair<std::int64_t, Element>> divisibility_report(const FiniteAlgebra& g, std::int64_t n_max) {
    return divisibility_report(g, n_max, 0);
}

std::vector<std::pair<std::int64_t, Element>> divisibility_report(const FiniteAlgebra& g, std::int64_t n_max,
                                                                  std::int64_t exponent) {
    std::vector<std::pair<std::int64_t, Element>> out;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        std::vector<char> hit(g.size(), 0);
        for (Element e = 0; e < g.size(); ++e) {
            hit[multiple(g, n, e)] = 1;
        }
        std::int64_t killer = exponent > 0 ? exponent / std::gcd(n, exponent) : 0;
        for (Element a = 0; a < g.size(); ++a) {
            bool consistent = exponent == 0 || multiple(g, killer, a) == 0;
            if (!hit[a] && consistent) {
                out.emplace_back(n, a);
            }
        }
    }
    return out;
}

QmodZ::QmodZ(std::int64_t p, std::int64_t q) {
    if (q <= 0) {
        throw InputError("denominator must be positive");
    }
    p %= q;
    if (p < 0) {
        p += q;
    }
    std::int64_t d = std::gcd(p, q);
    p_ = p / d;
    q_ = q / d;
}

QmodZ QmodZ::operator+(const QmodZ& o) const {
    std::int64_t l = std::lcm(q_, o.q_);
    return QmodZ(p_ * (l / q_) + o.p_ * (l / o.q_), l);
}

QmodZ QmodZ::operator-() const { return QmodZ(-p_, q_); }

QmodZ QmodZ::times(std::int64_t n) const {
    std::int64_t m = n % q_;
    return QmodZ(p_ * m, q_);
}

std::string QmodZ::to_string() const { return std::to_string(p_) + "/" + std::to_string(q_); }

std::optional<QmodZ> solve_linear(std::int64_t n, const QmodZ& a) {
    if (n < 0) {
        return solve_linear(-n, -a);
    }
    if (n == 0) {
        return a == QmodZ() ? std::optional<QmodZ>(QmodZ()) : std::nullopt;
    }
    return QmodZ(a.numerator(), a.denominator() * n);
}

} // namespace ualg
