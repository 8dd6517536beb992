#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "support/oracles.hpp"
#include "ualg/completeness.hpp"
#include "ualg/error.hpp"
#include "ualg/group.hpp"
#include "ualg/homomorphism.hpp"

namespace ualg {
namespace {

FiniteAlgebra z(unsigned m) { return cyclic_product_group({m}, "z" + std::to_string(m)); }

ExtensionCondition cond(const std::string& l, const std::string& r) {
    std::set<std::string> gens{"g", "h", "x"};
    return {parse_term(l, group_signature(), gens), parse_term(r, group_signature(), gens)};
}

TEST(CyclicProductGroup, LabelsAndOrder) {
    auto k = cyclic_product_group({2, 2});
    EXPECT_EQ(k.name(), "Z2x2");
    EXPECT_EQ(k.label(1), "(0,1)");
    EXPECT_EQ(k.label(2), "(1,0)");
    EXPECT_FALSE(first_failing_identity(k, exponent_variety(2).identities));
    EXPECT_EQ(print_identity(exponent_identity(4)), "plus(plus(x,x),plus(x,x)) = zero");
}

TEST(Linearize, Examples) {
    auto z4 = z(4);
    auto a = normalize_condition(cond("plus(plus(x,x),g)", "h"), z4, {{"g", 1}, {"h", 3}});
    EXPECT_EQ(a.n, 2);
    EXPECT_EQ(a.a, Element{2});
    auto b = normalize_condition(cond("neg(x)", "plus(x,g)"), z4, {{"g", 2}});
    EXPECT_EQ(b.n, 2);
    EXPECT_EQ(b.a, Element{2});
    auto c = normalize_condition(cond("x", "x"), z4, {});
    EXPECT_EQ(c.n, 0);
    EXPECT_EQ(c.a, Element{0});
    EXPECT_EQ(print_linear_condition(a, z4), "2·x = 2 (x^2 = 2)");
    auto form = linearize(cond("plus(neg(g),plus(x,neg(x)))", "x").lhs);
    EXPECT_EQ(form.x_coeff, 0);
    EXPECT_EQ(form.coeffs.at("g"), -1);
}

TEST(Linearize, SoundOnRandomTerms) {
    std::mt19937_64 rng(oracle::test_seed() + 31);
    std::vector<std::string> gens{"g", "h", "x"};
    for (unsigned m = 2; m <= 8; ++m) {
        for (int round = 0; round < 100; ++round) {
            auto t = oracle::random_term(group_signature(), gens, 3, rng);
            auto form = linearize(t);
            std::map<std::string, std::int64_t> values{{"g", static_cast<std::int64_t>(rng() % m)},
                                                       {"h", static_cast<std::int64_t>(rng() % m)}};
            for (std::int64_t x = 0; x < m; ++x) {
                values["x"] = x;
                std::int64_t predicted = form.x_coeff * x;
                for (const auto& [name, c] : form.coeffs) {
                    predicted += c * values.at(name);
                }
                predicted = ((predicted % m) + m) % m;
                EXPECT_EQ(predicted, oracle::eval_mod(t, m, values)) << print_term(t);
            }
        }
    }
}

TEST(SolveLinear, Examples) {
    auto q = solve_linear(3, QmodZ(1, 2));
    ASSERT_TRUE(q);
    EXPECT_EQ(*q, QmodZ(1, 6));
    EXPECT_EQ(q->to_string(), "1/6");
    EXPECT_EQ(solve_linear(z(4), {2, 2}), Element{1});
    EXPECT_FALSE(solve_linear(z(2), {2, 1}));
    EXPECT_EQ(solve_linear(z(4), {0, 0}), Element{0});
    EXPECT_FALSE(solve_linear(0, QmodZ(1, 3)));
}

TEST(QmodZ, CanonicalArithmetic) {
    EXPECT_EQ(QmodZ(3, 6), QmodZ(1, 2));
    EXPECT_EQ(QmodZ(-1, 3), QmodZ(2, 3));
    EXPECT_EQ(QmodZ(5, 4), QmodZ(1, 4));
    EXPECT_EQ(QmodZ(1, 2) + QmodZ(1, 2), QmodZ(0, 1));
    EXPECT_EQ(-QmodZ(1, 3), QmodZ(2, 3));
    EXPECT_EQ(QmodZ(0, 5).to_string(), "0/1");
    EXPECT_THROW(QmodZ(1, 0), InputError);
}

TEST(QmodZ, DivisibleForSeededValues) {
    std::mt19937_64 rng(oracle::test_seed() + 32);
    for (std::int64_t n = 1; n <= 20; ++n) {
        for (int k = 0; k < 100; ++k) {
            std::int64_t q = 1 + static_cast<std::int64_t>(rng() % 1000);
            QmodZ a(static_cast<std::int64_t>(rng() % 1000), q);
            auto x = solve_linear(n, a);
            ASSERT_TRUE(x);
            EXPECT_EQ(x->times(n), a);
        }
    }
}

TEST(Divisibility, Reports) {
    using Pairs = std::vector<std::pair<std::int64_t, Element>>;
    EXPECT_EQ(divisibility_report(z(4), 2), (Pairs{{2, 1}, {2, 3}}));
    EXPECT_TRUE(divisibility_report(z(1), 10).empty());
    EXPECT_TRUE(divisibility_report(z(3), 2).empty());
}

TEST(Divisibility, ConsistentWithInjectivity) {
    CheckOptions o;
    EXPECT_FALSE(divisibility_report(z(2), 4).empty());
    EXPECT_FALSE(is_injective_upto(z(2), exponent_variety(4), o).passed);
    EXPECT_EQ(divisibility_report(z(4), 4, 4), (std::vector<std::pair<std::int64_t, Element>>{}));
    EXPECT_EQ(divisibility_report(z(2), 4, 4).front(), (std::pair<std::int64_t, Element>{2, 1}));
    for (unsigned m : {2u, 4u}) {
        auto v = exponent_variety(m);
        for (const auto& b : variety_members(v, 4, v.generating_algebras)) {
            bool divisible = divisibility_report(b, m, m).empty();
            EXPECT_EQ(divisible, is_injective_upto(b, v, o).passed) << m << " " << b.name();
        }
    }
}

TEST(Bridge, ConditionsMatchNormalizedLinearConditions) {
    for (unsigned m : {2u, 4u}) {
        auto v = exponent_variety(m);
        auto zm = z(m);
        for (const auto& sub : enumerate_subalgebras(zm)) {
            auto a_sub = restrict(zm, sub);
            for (const auto& e : variety_members(v, 4)) {
                for (const auto& phi : enumerate_homs(a_sub.algebra, e)) {
                    if (!phi.injective()) {
                        continue;
                    }
                    for (Element a = 0; a < e.size(); ++a) {
                        auto ext = realize_extension(e, phi.image(), a);
                        GeneratorMap base;
                        for (const auto& [name, el] : ext.base_gens) {
                            Element in_e = *e.find_label(ext.ambient.label(el));
                            auto pos = std::find(phi.map.begin(), phi.map.end(), in_e) - phi.map.begin();
                            base.emplace_back(name, sub[pos]);
                        }
                        auto conds = enumerate_condition_set(v, ext, 2);
                        std::vector<LinearCondition> linear;
                        for (const auto& c : conds.conditions()) {
                            linear.push_back(normalize_condition(c, zm, base));
                        }
                        for (Element b = 0; b < zm.size(); ++b) {
                            bool solves = std::all_of(linear.begin(), linear.end(), [&](const LinearCondition& lc) {
                                return multiple(zm, lc.n, b) == lc.a;
                            });
                            EXPECT_EQ(satisfies_conditions(zm, base, b, conds).ok, solves);
                        }
                    }
                }
            }
        }
    }
}

} // namespace
} // namespace ualg
