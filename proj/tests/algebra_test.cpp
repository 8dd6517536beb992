#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "support/oracles.hpp"
#include "ualg/algebra.hpp"
#include "ualg/boolean.hpp"
#include "ualg/congruence.hpp"
#include "ualg/error.hpp"
#include "ualg/group.hpp"
#include "ualg/homomorphism.hpp"
#include "ualg/identity.hpp"

namespace ualg {
namespace {

FiniteAlgebra z(unsigned m) { return cyclic_product_group({m}, "z" + std::to_string(m)); }

Element subset_of(const FiniteAlgebra& p, const std::string& label) { return *p.find_label(label); }

TEST(FiniteAlgebra, ValidatesTables) {
    auto sig = Signature::parse("f/1");
    EXPECT_THROW(FiniteAlgebra(sig, {"a", "b"}, {{0}}), InputError);
    EXPECT_THROW(FiniteAlgebra(sig, {"a", "b"}, {{0, 2}}), InputError);
    EXPECT_THROW(FiniteAlgebra(sig, {"a", "a"}, {{0, 1}}), InputError);
    EXPECT_THROW(FiniteAlgebra(sig, {}, {{}}), InputError);
    FiniteAlgebra ok(sig, {"a", "b"}, {{1, 0}}, "swap");
    EXPECT_EQ(ok.apply(0, std::vector<Element>{1}), 0u);
    EXPECT_EQ(ok.find_label("b"), Element{1});
}

TEST(SubalgebraClosure, Examples) {
    auto z4 = z(4);
    EXPECT_EQ(subalgebra_closure(z4, std::vector<Element>{2}), (Subset{0, 2}));
    auto ba2 = powerset_algebra(1);
    EXPECT_EQ(subalgebra_closure(ba2, std::vector<Element>{}), (Subset{0, 1}));
    auto p3 = powerset_algebra(3);
    Subset expected{subset_of(p3, "{}"), subset_of(p3, "{3}"), subset_of(p3, "{1,2}"), subset_of(p3, "{1,2,3}")};
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(subalgebra_closure(p3, std::vector<Element>{subset_of(p3, "{1,2}"), subset_of(p3, "{3}")}), expected);
}

TEST(SubalgebraClosure, EmptySeedWithoutConstantsIsRejected) {
    auto sig = Signature::parse("meet/2");
    FiniteAlgebra sl(sig, {"0", "1"}, {{0, 0, 0, 1}});
    EXPECT_THROW(subalgebra_closure(sl, std::vector<Element>{}), InputError);
}

TEST(SubalgebraClosure, MatchesNaiveFixpointAndIsAClosureOperator) {
    std::mt19937_64 rng(oracle::test_seed());
    auto sig = Signature::parse("f/2 u/1");
    for (int round = 0; round < 60; ++round) {
        auto alg = oracle::random_algebra(sig, 2 + round % 3, rng);
        for (unsigned mask = 1; mask < (1u << alg.size()); ++mask) {
            Subset seed;
            for (Element e = 0; e < alg.size(); ++e) {
                if (mask >> e & 1u) {
                    seed.push_back(e);
                }
            }
            auto c = subalgebra_closure(alg, seed);
            ASSERT_EQ(c, oracle::naive_closure(alg, seed));
            EXPECT_TRUE(is_closed(alg, c));
            EXPECT_EQ(subalgebra_closure(alg, c), c);
            EXPECT_TRUE(std::includes(c.begin(), c.end(), seed.begin(), seed.end()));
            for (Element extra = 0; extra < alg.size(); ++extra) {
                Subset bigger = seed;
                bigger.push_back(extra);
                std::sort(bigger.begin(), bigger.end());
                auto c2 = subalgebra_closure(alg, bigger);
                EXPECT_TRUE(std::includes(c2.begin(), c2.end(), c.begin(), c.end()));
            }
        }
    }
}

TEST(Subalgebras, PowersetOfTwoAtoms) {
    auto p2 = powerset_algebra(2);
    EXPECT_EQ(enumerate_subalgebras(p2).size(), 2u);
    auto z4 = z(4);
    EXPECT_EQ(enumerate_subalgebras(z4), (std::vector<Subset>{{0}, {0, 2}, {0, 1, 2, 3}}));
}

TEST(Subalgebras, RestrictAndMinimalGenerators) {
    auto z4 = z(4);
    auto sub = restrict(z4, Subset{0, 2});
    EXPECT_EQ(sub.algebra.size(), 2u);
    EXPECT_EQ(sub.local(2), Element{1});
    EXPECT_FALSE(sub.local(1));
    EXPECT_EQ(minimal_generating_set(z4, Subset{0, 2}), (Subset{2}));
    EXPECT_EQ(minimal_generating_set(z4, Subset{0}), (Subset{}));
    EXPECT_EQ(format_subset(z4, Subset{0, 2}), "{0,2}");
    EXPECT_THROW(restrict(z4, Subset{1}), InputError);
}

TEST(Homomorphism, ChecksTables) {
    auto z4 = z(4);
    auto z2 = z(2);
    EXPECT_TRUE(is_homomorphism(std::vector<Element>{0, 1, 0, 1}, z4, z2));
    EXPECT_TRUE(is_homomorphism(std::vector<Element>{0, 0, 0, 0}, z4, z2));
    auto bad = is_homomorphism(std::vector<Element>{0, 1, 1, 1}, z4, z2);
    ASSERT_FALSE(bad);
    ASSERT_TRUE(bad.violation);
    EXPECT_EQ(z4.signature()[bad.violation->symbol].name, "plus");
    EXPECT_EQ(bad.violation->args, (std::vector<Element>{1, 1}));
}

TEST(Homomorphism, EnumerationExamples) {
    EXPECT_EQ(enumerate_homs(z(4), z(2)).size(), 2u);
    auto ba2 = powerset_algebra(1);
    auto homs = enumerate_homs(ba2, ba2);
    ASSERT_EQ(homs.size(), 1u);
    EXPECT_EQ(homs[0].map, (std::vector<Element>{0, 1}));
    auto trivial = z(1);
    EXPECT_EQ(enumerate_homs(trivial, z(4)).size(), 1u);
    EXPECT_EQ(enumerate_homs(z(4), trivial).size(), 1u);
    EXPECT_EQ(enumerate_homs(powerset_algebra(0), powerset_algebra(2)).size(), 0u);
}

TEST(Homomorphism, EnumerationMatchesBruteForce) {
    std::mt19937_64 rng(oracle::test_seed() + 7);
    auto sig = Signature::parse("f/2 u/1");
    for (int round = 0; round < 80; ++round) {
        auto dom = oracle::random_algebra(sig, 1 + round % 4, rng);
        auto cod = oracle::random_algebra(sig, 1 + (round / 4) % 4, rng);
        std::vector<std::vector<Element>> fast;
        for (const auto& h : enumerate_homs(dom, cod)) {
            fast.push_back(h.map);
        }
        std::sort(fast.begin(), fast.end());
        EXPECT_EQ(fast, oracle::all_homs(dom, cod));
    }
    for (unsigned a : {1u, 2u, 4u}) {
        for (unsigned b : {1u, 2u, 3u, 4u}) {
            auto fast = enumerate_homs(z(a), z(b));
            EXPECT_EQ(fast.size(), oracle::all_homs(z(a), z(b)).size());
        }
    }
}

TEST(Homomorphism, PropagationRejectsInconsistentSeeds) {
    auto z4 = z(4);
    auto z2 = z(2);
    PartialMap seed(4);
    seed[1] = 1;
    auto full = propagate_images(z4, z2, seed);
    ASSERT_TRUE(full);
    EXPECT_EQ((*full)[2], Element{0});
    PartialMap bad(4);
    bad[1] = 1;
    bad[2] = 1;
    EXPECT_FALSE(propagate_images(z4, z2, bad));
}

TEST(Congruence, Examples) {
    auto ba2 = powerset_algebra(1);
    std::vector<ElementPair> all{{0, 1}};
    EXPECT_EQ(congruence_generated(ba2, all).block_count(), 1u);
    auto z4 = z(4);
    std::vector<ElementPair> half{{0, 2}};
    auto c = congruence_generated(z4, half);
    EXPECT_EQ(c.blocks(), (std::vector<Subset>{{0, 2}, {1, 3}}));
    EXPECT_EQ(congruence_generated(z4, {}).block_count(), 4u);
}

TEST(Congruence, QuotientExamples) {
    auto z4 = z(4);
    std::vector<ElementPair> half{{0, 2}};
    auto q = quotient(congruence_generated(z4, half));
    EXPECT_EQ(q.algebra.size(), 2u);
    EXPECT_EQ(enumerate_homs(q.algebra, z(2)).size(), 2u);
    EXPECT_TRUE(oracle::preserves_tables(z4, q.algebra, q.projection.map));
    auto same = quotient(Congruence::identity(z4));
    EXPECT_EQ(same.algebra.size(), 4u);
    EXPECT_TRUE(same.algebra.same_tables(z4));
    std::vector<ElementPair> total{{0, 1}, {0, 2}, {0, 3}};
    EXPECT_EQ(quotient(congruence_generated(z4, total)).algebra.size(), 1u);
}

/// Every pair of argument tuples related coordinatewise has related values.
bool compatible_brute(const FiniteAlgebra& alg, const std::vector<std::size_t>& block) {
    const auto& sig = alg.signature();
    for (std::size_t s = 0; s < sig.size(); ++s) {
        std::size_t arity = sig[s].arity;
        std::vector<Element> a(arity, 0);
        std::vector<Element> b(arity, 0);
        std::size_t total = 1;
        for (std::size_t i = 0; i < 2 * arity; ++i) {
            total *= alg.size();
        }
        for (std::size_t code = 0; code < total; ++code) {
            std::size_t rest = code;
            bool related = true;
            for (std::size_t i = 0; i < arity; ++i) {
                a[i] = static_cast<Element>(rest % alg.size());
                rest /= alg.size();
                b[i] = static_cast<Element>(rest % alg.size());
                rest /= alg.size();
                related = related && block[a[i]] == block[b[i]];
            }
            if (related && block[alg.apply(s, a)] != block[alg.apply(s, b)]) {
                return false;
            }
        }
    }
    return true;
}

/// Every set partition of the carrier in restricted growth form.
std::vector<std::vector<std::size_t>> all_partitions(std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> block(n, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
        if (i == n) {
            out.push_back(block);
            return;
        }
        for (std::size_t b = 0; b <= used && b < n; ++b) {
            block[i] = b;
            rec(i + 1, std::max(used, b + 1));
        }
    };
    rec(0, 0);
    return out;
}

TEST(Congruence, GeneratedIsTheLeastCompatibleContainingThePairs) {
    std::mt19937_64 rng(oracle::test_seed() + 3);
    auto sig = Signature::parse("f/2 u/1");
    for (int round = 0; round < 40; ++round) {
        auto alg = oracle::random_algebra(sig, 2 + round % 3, rng);
        std::vector<std::vector<std::size_t>> compatible;
        for (auto& block : all_partitions(alg.size())) {
            bool brute = compatible_brute(alg, block);
            ASSERT_EQ(is_compatible(alg, block), brute);
            if (brute) {
                compatible.push_back(block);
            }
        }
        Element a = static_cast<Element>(rng() % alg.size());
        Element b = static_cast<Element>(rng() % alg.size());
        std::vector<ElementPair> pairs{{a, b}};
        auto c = congruence_generated(alg, pairs);
        EXPECT_TRUE(c.related(a, b));
        std::vector<std::size_t> mine(alg.size());
        for (Element e = 0; e < alg.size(); ++e) {
            mine[e] = c.block_of(e);
        }
        EXPECT_TRUE(is_compatible(alg, mine));
        for (const auto& other : compatible) {
            if (other[a] != other[b]) {
                continue;
            }
            for (Element x = 0; x < alg.size(); ++x) {
                for (Element y = 0; y < alg.size(); ++y) {
                    if (c.related(x, y)) {
                        EXPECT_EQ(other[x], other[y]);
                    }
                }
            }
        }
        auto q = quotient(c);
        EXPECT_EQ(kernel_partition(q.projection.map), mine);
        EXPECT_TRUE(oracle::preserves_tables(alg, q.algebra, q.projection.map));
    }
}

TEST(Identity, Examples) {
    auto ba2 = powerset_algebra(1);
    auto sig = ba2.signature();
    std::set<std::string> xy{"x", "y"};
    Identity comm{parse_term("and(x,y)", sig, xy), parse_term("and(y,x)", sig, xy)};
    EXPECT_TRUE(check_identity(ba2, comm));
    auto z4 = z(4);
    Identity twice{parse_term("plus(x,x)", z4.signature(), {"x"}), parse_term("zero", z4.signature(), {})};
    auto r = check_identity(z4, twice);
    ASSERT_FALSE(r);
    EXPECT_EQ(r.counterexample->at("x"), Element{1});
    Identity refl{Term::generator("x"), Term::generator("x")};
    EXPECT_TRUE(check_identity(z4, refl));
    EXPECT_EQ(print_identity(twice), "plus(x,x) = zero");
}

} // namespace
} // namespace ualg
