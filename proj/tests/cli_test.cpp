#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::filesystem::path kFixtures = UALG_FIXTURES_DIR;
const std::filesystem::path kGolden = UALG_GOLDEN_DIR;
const std::string kCli = UALG_CLI_PATH;

struct Run {
    int code = -1;
    std::string out;
};

/// Runs the CLI from the fixtures directory; stderr is folded into `out`
/// only when `with_stderr` is set.
Run run(const std::string& args, bool with_stderr = false) {
    std::string cmd = "cd '" + kFixtures.string() + "' && '" + kCli + "' " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        return r;
    }
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), n);
    }
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string replay_args(const std::string& report) {
    auto pos = report.find("replay: ualg ");
    if (pos == std::string::npos) {
        return {};
    }
    pos += std::string("replay: ualg ").size();
    return report.substr(pos, report.find('\n', pos) - pos);
}

TEST(CliEval, Examples) {
    auto a = run("eval --algebra ba2.alg --term 'and(x,not(x))' --bind x=1");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, "0\n");
    auto b = run("eval --algebra z4.alg --term 'plus(x,x)' --bind x=3");
    EXPECT_EQ(b.code, 0);
    EXPECT_EQ(b.out, "2\n");
    auto c = run("eval --algebra ba2.alg --term 'and(x)'", true);
    EXPECT_EQ(c.code, 2);
    EXPECT_NE(c.out.find("arity mismatch"), std::string::npos);
}

TEST(CliEval, InputErrors) {
    EXPECT_EQ(run("eval --algebra nowhere.alg --term x --bind x=0").code, 2);
    EXPECT_EQ(run("eval --algebra ba2.alg --term x --bind x=7").code, 2);
    EXPECT_EQ(run("eval --algebra ba2.alg --term x").code, 2);
    EXPECT_EQ(run("eval --term x").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
}

TEST(CliFree, Sizes) {
    EXPECT_EQ(run("free --variety boolean.var --gens 1").out, "4\n");
    EXPECT_EQ(run("free --variety boolean.var --gens 2").out, "16\n");
    EXPECT_EQ(run("free --variety exp2.var --gens 1").out, "2\n");
    auto tables = run("free --variety exp2.var --gens 1 --tables");
    EXPECT_EQ(tables.code, 0);
    EXPECT_NE(tables.out.find("op plus:"), std::string::npos);
    auto cap = run("free --variety boolean.var --gens 4", true);
    EXPECT_EQ(cap.code, 3);
    EXPECT_NE(cap.out.find("cap of 1024"), std::string::npos);
}

TEST(CliMembers, Counts) {
    EXPECT_EQ(run("members --variety boolean.var --size 2").out, "1\n");
    EXPECT_EQ(run("members --variety boolean.var --size 3").out, "0\n");
    EXPECT_EQ(run("members --variety boolean.var --size 4 --node-cap 5").code, 3);
}

struct GoldenCase {
    std::string args;
    int code;
    std::string golden;
};

const GoldenCase kCases[] = {
    {"check-injective --algebra z2.alg --variety exp4.var --max-size 4", 1, "check_injective_z2_exp4.txt"},
    {"crosscheck --algebra ba4.alg --variety boolean.var --max-size 8 --depth 2", 0, "crosscheck_ba4_boolean.txt"},
    {"check-complete --algebra trivial.alg --variety boolean.var --max-size 2", 0,
     "check_complete_trivial_boolean.txt"},
};

TEST(CliCheck, ReportsMatchGoldenFiles) {
    for (const auto& c : kCases) {
        auto r = run(c.args);
        EXPECT_EQ(r.code, c.code) << c.args;
        EXPECT_EQ(r.out, read_file(kGolden / c.golden)) << c.args;
    }
}

TEST(CliCheck, ReplayCommandsRoundTrip) {
    for (const auto& c : kCases) {
        auto first = run(c.args);
        auto again = run(replay_args(first.out));
        EXPECT_EQ(again.code, first.code) << c.args;
        EXPECT_EQ(again.out, first.out) << c.args;
    }
}

TEST(CliCheck, InjectivityWitnessNamesTheCyclicGroupOfOrderFour) {
    auto r = run(kCases[0].args);
    EXPECT_NE(r.out.find("member: z4"), std::string::npos);
    EXPECT_NE(r.out.find("subalgebra: {0,2}"), std::string::npos);
    EXPECT_NE(r.out.find("homomorphism: 0->0 2->1"), std::string::npos);
    EXPECT_NE(read_file(kGolden / kCases[1].golden).find("verdicts agree: complete ∧ injective"), std::string::npos);
}

TEST(CliCheck, ReportFileMatchesStdout) {
    auto path = std::filesystem::temp_directory_path() / "ualg_cli_test_report.txt";
    auto r = run(kCases[0].args + " --report '" + path.string() + "'");
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(read_file(path), r.out);
    std::filesystem::remove(path);
}

TEST(CliCheck, ExitCodes) {
    EXPECT_EQ(run("check-complete --algebra z2.alg --variety boolean.var").code, 2);
    EXPECT_EQ(run("check-complete --algebra z2.alg --variety nowhere.var").code, 2);
    EXPECT_EQ(run("check-complete --algebra z2.alg --variety exp4.var --max-size 4").code, 1);
    EXPECT_EQ(run("crosscheck --algebra z2.alg --variety exp4.var --max-size 4").code, 1);
    EXPECT_EQ(run("check-injective --algebra z2.alg --variety exp2.var --max-size 4").code, 0);
    auto cap = run("check-injective --algebra ba2.alg --variety boolean.var --max-size 4 --node-cap 20", true);
    EXPECT_EQ(cap.code, 3);
    EXPECT_NE(cap.out.find("partial statistics"), std::string::npos);
}

} // namespace
