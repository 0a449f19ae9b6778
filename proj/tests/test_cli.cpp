#include "cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using bnsens::cli::run;

namespace {

const std::string kData = BNSENS_DATA_DIR;

struct Result {
    int code;
    std::string out, err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("bnsens_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name, const std::string& content = "") const {
        const auto p = (path_ / name).string();
        if (!content.empty()) std::ofstream(p) << content;
        return p;
    }

private:
    fs::path path_;
};

std::string read(const std::string& path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST(CliInfer, ChainExample) {
    auto r = call({"infer", kData + "/chain.bn", "B=b"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("= 1/2"), std::string::npos) << r.out;
    auto ge = call({"infer", kData + "/chain.bn", "A=a", "-e", "B=b", "--ge", "3/4"});
    EXPECT_EQ(ge.code, 0);
    EXPECT_NE(ge.out.find("yes"), std::string::npos) << ge.out;
}

TEST(CliInfer, ErrorCodes) {
    TempDir dir;
    const auto det = dir.file("det.bn", "network d\nvariable A values x y\nvariable B values x y\ncpt A\n  1 0\n"
                                        "cpt B given A\n  x : 1/2 1/2\n  y : 1/2 1/2\n");
    auto zero = call({"infer", det, "B=x", "-e", "A=y"});
    EXPECT_EQ(zero.code, 3);
    EXPECT_NE(zero.err.find("error"), std::string::npos);
    const auto bad = dir.file("bad.bn", "network d\nvariable A values x y\ncpt A\n  1/2 1/3\n");
    EXPECT_EQ(call({"infer", bad, "A=x"}).code, 2);
    EXPECT_EQ(call({"infer", kData + "/chain.bn", "Q=q"}).code, 2);
    EXPECT_EQ(call({"bogus"}).code, 2);
}

TEST(CliSensfn, Coefficients) {
    auto one = call({"sensfn", kData + "/chain.bn", "B=b", "-p", "A=a"});
    EXPECT_EQ(one.code, 0);
    EXPECT_NE(one.out.find("c1=1/2 c2=1/4 c3=0 c4=1"), std::string::npos) << one.out;
    auto id = call({"sensfn", kData + "/chain.bn", "A=a", "-p", "A=a"});
    EXPECT_NE(id.out.find("c1=1 c2=0 c3=0 c4=1"), std::string::npos) << id.out;
    EXPECT_EQ(call({"sensfn", kData + "/chain.bn", "A=a", "-p", "B=b|A=a", "-p", "B=nb|A=a"}).code, 2);
}

TEST(CliDistance, AllKinds) {
    auto r = call({"distance", kData + "/chain.bn", "-p", "A=a", "--x", "1/2", "--y", "1/4"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("D_CD = 1.0986122886"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("D_KL = 0.1438410362"), std::string::npos) << r.out;
    EXPECT_EQ(call({"distance", kData + "/chain.bn", "-p", "A=a", "--x", "1/2,1", "--y", "1/4"}).code, 2);
}

TEST(CliReduceTune, WorkedExample) {
    TempDir dir;
    const auto prefix = dir.file("worked");
    auto red = call({"reduce", "emajsat", kData + "/worked_example.formula", "-o", prefix, "--exists", "2"});
    ASSERT_EQ(red.code, 0) << red.err;
    EXPECT_NE(red.out.find("9 nodes"), std::string::npos);
    auto yes = call({"tune", prefix + ".inst"});
    EXPECT_EQ(yes.code, 0) << yes.err;
    EXPECT_NE(yes.out.find("witness 1"), std::string::npos);

    std::string inst = read(prefix + ".inst");
    const auto q = inst.find("q 1/2");
    ASSERT_NE(q, std::string::npos) << inst;
    const auto at_one = dir.file("q1.inst", inst.substr(0, q) + "q 1" + inst.substr(q + 5));
    EXPECT_EQ(call({"tune", prefix + ".bn", at_one}).code, 1);

    const auto bad_variant = dir.file("bad.inst", "network worked.bn\nvariant SIDEWAYS\nquery C=true\nq 1/2\n");
    EXPECT_EQ(call({"tune", bad_variant}).code, 2);
}

TEST(CliReduce, MaxsatAndErrors) {
    TempDir dir;
    const auto prefix = dir.file("two");
    auto red = call({"reduce", "maxsat", kData + "/two_clause.cnf", "-o", prefix, "--k", "1"});
    ASSERT_EQ(red.code, 0) << red.err;
    EXPECT_NE(red.out.find("polytree: yes"), std::string::npos);
    EXPECT_EQ(call({"tune", prefix + ".inst"}).code, 0);
    const auto nary = dir.file("nary.formula", "(and V1 V2 V3)\n");
    EXPECT_EQ(call({"reduce", "emajsat", nary, "-o", dir.file("x")}).code, 2);
}

TEST(CliVerify, SmallSweepsAndDeterminism) {
    auto empty = call({"--format", "structured", "verify", "--count", "0"});
    EXPECT_EQ(empty.code, 0);
    const std::vector<std::string> args{"--seed", "5", "--format", "structured", "verify", "--count", "20",
                                        "--max-vars", "6"};
    auto a = call(args), b = call(args);
    EXPECT_EQ(a.code, 0) << a.out;
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("\"disagreements\":0"), std::string::npos) << a.out.substr(a.out.rfind('{'));
}
