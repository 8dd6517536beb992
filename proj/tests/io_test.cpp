#include <gtest/gtest.h>

#include <filesystem>

#include "ualg/boolean.hpp"
#include "ualg/error.hpp"
#include "ualg/group.hpp"
#include "ualg/io.hpp"
#include "ualg/model_search.hpp"

namespace ualg {
namespace {

const std::filesystem::path kFixtures = UALG_FIXTURES_DIR;

const char* kBa2 = R"(signature: and/2 or/2 not/1 zero/0 one/0
carrier: 0 1
op and: 0,0=0 0,1=0 1,0=0 1,1=1
op or: 0,0=0 0,1=1 1,0=1 1,1=1
op not: 0=1 1=0
op zero: =0
op one: =1
)";

ParseError parse_error(const std::string& text) {
    try {
        parse_algebra(text);
    } catch (const ParseError& e) {
        return e;
    }
    ADD_FAILURE() << "no parse error for:\n" << text;
    return ParseError("none", 0, 0);
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
    auto pos = text.find(from);
    EXPECT_NE(pos, std::string::npos) << from;
    return text.replace(pos, from.size(), to);
}

TEST(ParseAlgebra, ReadsTheTwoElementBooleanAlgebra) {
    auto alg = parse_algebra(kBa2, "ba2");
    EXPECT_EQ(alg.size(), 2u);
    EXPECT_TRUE(alg.same_tables(powerset_algebra(1)));
    EXPECT_EQ(alg.name(), "ba2");
}

TEST(ParseAlgebra, SkipsCommentsAndBlankLines) {
    auto alg = parse_algebra(std::string("# two elements\n\n") + kBa2);
    EXPECT_EQ(alg.size(), 2u);
}

TEST(ParseAlgebra, DiagnosticsCarryLineAndColumn) {
    auto arity = parse_error(replace(kBa2, "op not: 0=1", "op not: 0,0=1"));
    EXPECT_EQ(arity.line(), 5u);
    EXPECT_EQ(arity.column(), 9u);
    EXPECT_NE(arity.detail().find("expects 1"), std::string::npos);

    auto unknown = parse_error(replace(kBa2, "op or:", "op xor:"));
    EXPECT_EQ(unknown.line(), 4u);
    EXPECT_EQ(unknown.column(), 4u);
    EXPECT_NE(unknown.detail().find("unknown symbol 'xor'"), std::string::npos);

    auto element = parse_error(replace(kBa2, "1,1=1\nop or", "1,1=2\nop or"));
    EXPECT_EQ(element.line(), 3u);
    EXPECT_NE(element.detail().find("unknown element '2'"), std::string::npos);

    auto missing = parse_error(replace(kBa2, " 1,1=1\nop or", "\nop or"));
    EXPECT_NE(missing.detail().find("no entry for '1,1'"), std::string::npos);

    auto duplicate = parse_error(replace(kBa2, "0,1=0 1,0=0", "0,1=0 0,1=0"));
    EXPECT_NE(duplicate.detail().find("duplicate entry"), std::string::npos);

    auto no_op = parse_error(replace(kBa2, "op one: =1\n", ""));
    EXPECT_NE(no_op.detail().find("missing op line for 'one'"), std::string::npos);

    auto key = parse_error(replace(kBa2, "carrier:", "elements:"));
    EXPECT_NE(key.detail().find("unknown key"), std::string::npos);

    EXPECT_EQ(std::string(arity.what()), "5:9: " + arity.detail());
}

TEST(ParseAlgebra, FormatRoundTrips) {
    for (const auto& alg : {load_algebra(kFixtures / "ba4.alg"), cyclic_product_group({4})}) {
        auto again = parse_algebra(format_algebra(alg));
        EXPECT_TRUE(again.same_tables(alg));
        EXPECT_EQ(format_algebra(again), format_algebra(alg));
    }
    EXPECT_THROW(format_algebra(powerset_algebra(2)), InputError);
    EXPECT_THROW(format_algebra(cyclic_product_group({2, 2})), InputError);
}

TEST(LoadAlgebra, FixturesMatchBuiltInAlgebras) {
    EXPECT_TRUE(load_algebra(kFixtures / "ba2.alg").same_tables(powerset_algebra(1)));
    EXPECT_TRUE(load_algebra(kFixtures / "ba4.alg").same_tables(powerset_algebra(2)));
    EXPECT_TRUE(load_algebra(kFixtures / "z4.alg").same_tables(cyclic_product_group({4})));
    EXPECT_EQ(load_algebra(kFixtures / "z2.alg").name(), "z2");
    EXPECT_EQ(load_algebra(kFixtures / "trivial.alg").size(), 1u);
    EXPECT_THROW(load_algebra(kFixtures / "missing.alg"), InputError);
}

TEST(LoadVariety, FixturesMatchBuiltInVarieties) {
    auto boolean = load_variety(kFixtures / "boolean.var");
    EXPECT_EQ(boolean.name, "boolean");
    EXPECT_EQ(boolean.sig, boolean_signature());
    ASSERT_EQ(boolean.generating_algebras.size(), 1u);
    EXPECT_EQ(boolean.generating_algebras[0].name(), "ba2");
    auto exp4 = load_variety(kFixtures / "exp4.var");
    EXPECT_EQ(enumerate_models(exp4.sig, exp4.identities, 4).size(), 2u);
    EXPECT_EQ(load_variety(kFixtures / "semilattice.var").identities.size(), 3u);
}

TEST(ParseVariety, Diagnostics) {
    try {
        parse_variety("signature: meet/2\nidentity: meet(x) = x\n", kFixtures);
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_EQ(e.column(), 11u);
    }
    EXPECT_THROW(parse_variety("identity: meet(x,x) = x\n", kFixtures), ParseError);
    EXPECT_THROW(parse_variety("signature: meet/2\nidentity: meet(x,x)\n", kFixtures), ParseError);
    try {
        parse_variety("signature: plus/2 neg/1 zero/0\nidentity: plus(x,x) = zero\ngenerator-algebra: z4.alg\n",
                      kFixtures);
        FAIL() << "expected z4 to violate the identity";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

} // namespace
} // namespace ualg
