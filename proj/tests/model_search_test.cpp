#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "support/oracles.hpp"
#include "ualg/boolean.hpp"
#include "ualg/error.hpp"
#include "ualg/group.hpp"
#include "ualg/model_search.hpp"
#include "ualg/variety.hpp"

namespace ualg {
namespace {

FiniteAlgebra permuted(const FiniteAlgebra& alg, const std::vector<Element>& perm) {
    std::vector<Element> inverse(perm.size());
    for (Element e = 0; e < perm.size(); ++e) {
        inverse[perm[e]] = e;
    }
    std::vector<std::string> labels(alg.size());
    for (Element e = 0; e < alg.size(); ++e) {
        labels[perm[e]] = alg.label(e);
    }
    return FiniteAlgebra::tabulate(
        alg.signature(), labels,
        [&](std::size_t s, std::span<const Element> args) {
            std::vector<Element> orig;
            for (auto a : args) {
                orig.push_back(inverse[a]);
            }
            return perm[alg.apply(s, orig)];
        },
        alg.name());
}

/// Idempotent commutative associative tables on n points up to relabeling.
std::size_t semilattice_count(std::size_t n) {
    std::vector<std::pair<Element, Element>> cells;
    for (Element a = 0; a < n; ++a) {
        for (Element b = a + 1; b < n; ++b) {
            cells.emplace_back(a, b);
        }
    }
    std::size_t combos = 1;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        combos *= n;
    }
    std::set<std::vector<Element>> classes;
    std::vector<Element> table(n * n);
    for (std::size_t code = 0; code < combos; ++code) {
        std::size_t rest = code;
        for (Element a = 0; a < n; ++a) {
            table[a * n + a] = a;
        }
        for (auto [a, b] : cells) {
            table[a * n + b] = table[b * n + a] = static_cast<Element>(rest % n);
            rest /= n;
        }
        bool assoc = true;
        for (Element a = 0; a < n && assoc; ++a) {
            for (Element b = 0; b < n && assoc; ++b) {
                for (Element c = 0; c < n && assoc; ++c) {
                    assoc = table[table[a * n + b] * n + c] == table[a * n + table[b * n + c]];
                }
            }
        }
        if (!assoc) {
            continue;
        }
        std::vector<Element> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<Element> best;
        do {
            std::vector<Element> image(n * n);
            for (Element a = 0; a < n; ++a) {
                for (Element b = 0; b < n; ++b) {
                    image[perm[a] * n + perm[b]] = perm[table[a * n + b]];
                }
            }
            if (best.empty() || image < best) {
                best = image;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        classes.insert(best);
    }
    return classes.size();
}

TEST(ModelSearch, BooleanCountsMatchLatticeEnumeration) {
    auto v = boolean_variety();
    for (unsigned n = 1; n <= 4; ++n) {
        EXPECT_EQ(enumerate_models(v.sig, v.identities, n).size(), oracle::boolean_lattice_count(n)) << n;
    }
    EXPECT_EQ(enumerate_models(v.sig, v.identities, 2).size(), 1u);
    EXPECT_EQ(enumerate_models(v.sig, v.identities, 3).size(), 0u);
}

TEST(ModelSearch, ExponentTwoGroupOfOrderTwo) {
    auto ids = abelian_group_identities();
    ids.push_back(exponent_identity(2));
    auto models = enumerate_models(group_signature(), ids, 2);
    ASSERT_EQ(models.size(), 1u);
    EXPECT_TRUE(are_isomorphic(models[0], cyclic_product_group({2})));
}

TEST(ModelSearch, SemilatticeCountsMatchBruteForce) {
    auto v = semilattice_variety();
    for (std::size_t n = 1; n <= 4; ++n) {
        EXPECT_EQ(enumerate_models(v.sig, v.identities, n).size(), semilattice_count(n)) << n;
    }
}

TEST(ModelSearch, ExponentFourGroups) {
    auto v = exponent_variety(4);
    EXPECT_EQ(enumerate_models(v.sig, v.identities, 3).size(), 0u);
    auto four = enumerate_models(v.sig, v.identities, 4);
    ASSERT_EQ(four.size(), 2u);
    bool cyclic = are_isomorphic(four[0], cyclic_product_group({4})) || are_isomorphic(four[1], cyclic_product_group({4}));
    bool klein = are_isomorphic(four[0], cyclic_product_group({2, 2})) ||
                 are_isomorphic(four[1], cyclic_product_group({2, 2}));
    EXPECT_TRUE(cyclic);
    EXPECT_TRUE(klein);
}

TEST(ModelSearch, UnprunedModelsAreTheRelabelingsOfPrunedOnes) {
    for (const auto& [v, n] : {std::pair{semilattice_variety(), std::size_t{3}}, std::pair{boolean_variety(), std::size_t{4}}}) {
        ModelSearchOptions all;
        all.prune_iso = false;
        std::set<std::vector<std::vector<Element>>> labeled;
        for (const auto& m : enumerate_models(v.sig, v.identities, n, all)) {
            std::vector<std::vector<Element>> tables;
            for (std::size_t s = 0; s < v.sig.size(); ++s) {
                tables.emplace_back(m.table(s).begin(), m.table(s).end());
            }
            labeled.insert(tables);
        }
        std::set<std::vector<std::vector<Element>>> orbits;
        for (const auto& m : enumerate_models(v.sig, v.identities, n)) {
            std::vector<Element> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            do {
                auto p = permuted(m, perm);
                std::vector<std::vector<Element>> tables;
                for (std::size_t s = 0; s < v.sig.size(); ++s) {
                    tables.emplace_back(p.table(s).begin(), p.table(s).end());
                }
                orbits.insert(tables);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        EXPECT_EQ(labeled, orbits) << v.name;
    }
}

TEST(ModelSearch, NodeCapIsReported) {
    auto v = boolean_variety();
    ModelSearchOptions tight;
    tight.node_cap = 10;
    try {
        enumerate_models(v.sig, v.identities, 4, tight);
        FAIL() << "expected the cap to trigger";
    } catch (const CapExceeded& e) {
        EXPECT_EQ(e.cap(), 10u);
    }
}

TEST(ModelSearch, EveryModelSatisfiesTheIdentities) {
    auto v = exponent_variety(4);
    for (const auto& m : enumerate_models(v.sig, v.identities, 4)) {
        EXPECT_FALSE(first_failing_identity(m, v.identities));
    }
}

TEST(CanonicalForm, InvariantUnderRelabeling) {
    std::mt19937_64 rng(oracle::test_seed() + 11);
    auto sig = Signature::parse("f/2 u/1 c/0");
    for (int round = 0; round < 100; ++round) {
        auto alg = oracle::random_algebra(sig, 1 + round % 5, rng);
        std::vector<Element> perm(alg.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        auto other = permuted(alg, perm);
        EXPECT_EQ(canonical_form(alg), canonical_form(other));
        auto iso = find_isomorphism(alg, other);
        ASSERT_TRUE(iso);
        EXPECT_TRUE(oracle::preserves_tables(alg, other, *iso));
    }
}

TEST(CanonicalForm, SeparatesNonIsomorphicAlgebras) {
    std::mt19937_64 rng(oracle::test_seed() + 12);
    auto sig = Signature::parse("f/2");
    for (int round = 0; round < 200; ++round) {
        auto a = oracle::random_algebra(sig, 3, rng);
        auto b = oracle::random_algebra(sig, 3, rng);
        EXPECT_EQ(are_isomorphic(a, b), find_isomorphism(a, b).has_value());
    }
    EXPECT_FALSE(are_isomorphic(cyclic_product_group({4}), cyclic_product_group({2, 2})));
}

} // namespace
} // namespace ualg
