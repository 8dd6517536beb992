#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "ualg/boolean.hpp"
#include "ualg/completeness.hpp"
#include "ualg/group.hpp"
#include "ualg/homomorphism.hpp"

namespace ualg {
namespace {

FiniteAlgebra z(unsigned m) { return cyclic_product_group({m}, "z" + std::to_string(m)); }

CheckOptions bounds(std::size_t size, unsigned depth) {
    CheckOptions o;
    o.size_bound = size;
    o.depth = depth;
    return o;
}

TEST(Completeness, CyclicTwoInExponentTwo) {
    auto v = exponent_variety(2);
    EXPECT_TRUE(is_complete_upto(z(2), v, bounds(4, 2)).passed);
    EXPECT_TRUE(is_injective_upto(z(2), v, bounds(4, 2)).passed);
}

TEST(Completeness, CyclicTwoInExponentFourFails) {
    auto v = exponent_variety(4);
    auto c = is_complete_upto(z(2), v, bounds(4, 2));
    ASSERT_FALSE(c.passed);
    ASSERT_TRUE(c.witness);
    const auto& w = *c.witness;
    EXPECT_EQ(w.sub, (Subset{0, 1}));
    EXPECT_TRUE(are_isomorphic(w.extension.ambient, z(4)));
    for (Element b = 0; b < 2; ++b) {
        EXPECT_TRUE(w.violated[b]);
        EXPECT_FALSE(oracle::extension_exists(w.extension, z(2), w.base_map, b));
    }
    EXPECT_TRUE(replay(w, z(2)));
}

TEST(Injectivity, CyclicTwoInExponentFourWitness) {
    auto v = exponent_variety(4);
    auto r = is_injective_upto(z(2), v, bounds(4, 2));
    ASSERT_FALSE(r.passed);
    ASSERT_TRUE(r.witness);
    const auto& w = *r.witness;
    EXPECT_EQ(w.member.name(), "z4");
    EXPECT_EQ(w.sub, (Subset{0, 2}));
    EXPECT_EQ(w.hom, (std::vector<Element>{0, 1}));
    for (const auto& h : oracle::all_homs(w.member, z(2))) {
        EXPECT_FALSE(h[0] == 0 && h[2] == 1);
    }
    EXPECT_TRUE(replay(w, z(2)));
}

TEST(Completeness, BooleanAlgebrasPass) {
    auto v = boolean_variety();
    EXPECT_TRUE(is_complete_upto(powerset_algebra(1, "ba2"), v, bounds(4, 2)).passed);
    EXPECT_TRUE(is_injective_upto(powerset_algebra(1, "ba2"), v, bounds(4, 2)).passed);
    EXPECT_TRUE(is_complete_upto(powerset_algebra(2, "ba4"), v, bounds(4, 2)).passed);
    auto trivial = powerset_algebra(0, "trivial");
    auto r = is_complete_upto(trivial, v, bounds(2, 2));
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(r.stats.depth_gaps, 0u);
}

TEST(Completeness, WitnessesConvertBothWays) {
    auto v = exponent_variety(4);
    auto c = is_complete_upto(z(2), v, bounds(4, 2));
    auto i = is_injective_upto(z(2), v, bounds(4, 2));
    ASSERT_TRUE(c.witness && i.witness);
    EXPECT_TRUE(replay(to_injectivity_witness(*c.witness, z(2)), z(2)));
    EXPECT_TRUE(replay(to_completeness_witness(*i.witness, z(2), v, 2), z(2)));
}

TEST(Completeness, ReplayRejectsATamperedWitness) {
    auto v = exponent_variety(4);
    auto c = is_complete_upto(z(2), v, bounds(4, 2));
    ASSERT_TRUE(c.witness);
    auto w = *c.witness;
    for (auto& [name, e] : w.base_map) {
        e = 0;
    }
    EXPECT_FALSE(replay(w, z(2)));
    auto i = is_injective_upto(z(2), v, bounds(4, 2));
    ASSERT_TRUE(i.witness);
    auto wi = *i.witness;
    wi.hom = {0, 0};
    EXPECT_FALSE(replay(wi, z(2)));
}

TEST(Crosscheck, DesignatedExamples) {
    auto pass = crosscheck_prop3(z(2), exponent_variety(2), bounds(4, 2));
    EXPECT_TRUE(pass.agree && pass.complete.passed && pass.injective.passed);
    auto fail = crosscheck_prop3(z(2), exponent_variety(4), bounds(4, 2));
    EXPECT_TRUE(fail.agree);
    EXPECT_FALSE(fail.complete.passed);
    EXPECT_TRUE(fail.witnesses_convert);
    EXPECT_FALSE(fail.rerun_options);
}

TEST(Crosscheck, SemilatticeMembersAgree) {
    auto v = semilattice_variety();
    for (const auto& b : variety_members(v, 4, v.generating_algebras)) {
        auto r = crosscheck_prop3(b, v, bounds(4, 2));
        EXPECT_TRUE(r.agree) << b.name();
        EXPECT_TRUE(r.witnesses_convert) << b.name();
    }
}

TEST(Crosscheck, FailuresPersistUnderLargerBounds) {
    auto v = semilattice_variety();
    for (const auto& b : variety_members(v, 3, v.generating_algebras)) {
        if (is_injective_upto(b, v, bounds(3, 2)).passed) {
            continue;
        }
        EXPECT_FALSE(is_injective_upto(b, v, bounds(4, 2)).passed) << b.name();
        EXPECT_FALSE(is_complete_upto(b, v, bounds(4, 3)).passed) << b.name();
    }
    EXPECT_FALSE(is_complete_upto(z(2), exponent_variety(4), bounds(4, 3)).passed);
}

} // namespace
} // namespace ualg
