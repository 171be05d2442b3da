#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "symhom/pattern.hpp"

namespace fs = std::filesystem;
using symhom::run_cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "symhom");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class CliFiles : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("symhom_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string& name, const nlohmann::json& j) {
        auto p = (dir_ / name).string();
        std::ofstream(p) << j.dump();
        return p;
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

}  // namespace

TEST(Cli, PatternGenPath) {
    auto r = run({"pattern", "gen", "path", "--v", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto f = symhom::BipartiteMultigraph::from_json(nlohmann::json::parse(r.out));
    EXPECT_EQ(f, symhom::make_path(5));
}

TEST(Cli, PatternGenGrid) {
    auto r = run({"pattern", "gen", "grid", "--rows", "2", "--cols", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(symhom::BipartiteMultigraph::from_json(nlohmann::json::parse(r.out)), symhom::make_grid(2, 3));
}

TEST(Cli, VerifyQuotient) {
    auto r = run({"verify", "identity", "--name", "quotient", "--trials", "5", "--seed", "7"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"pattern", "gen", "path", "--v", "0"}).code, 2);
    EXPECT_EQ(run({"verify", "identity", "--name", "nonsense"}).code, 2);
    EXPECT_EQ(run({"width", "tw", "--graph", "/nonexistent/file.json"}).code, 2);
}

TEST_F(CliFiles, CompileThenAnalyze) {
    auto graph = write("p3.json", symhom::make_path(3).to_json());
    auto circuit = path("c.json");
    auto c = run({"compile", "--shape", "td", "--graph", graph, "--n", "2", "--m", "2", "--out", circuit});
    ASSERT_EQ(c.code, 0) << c.err;
    auto summary = nlohmann::json::parse(c.out);
    EXPECT_EQ(summary["shape"], "formula-multi");
    ASSERT_TRUE(fs::exists(circuit));

    auto a = run({"analyze", "--circuit", circuit, "--n", "2", "--m", "2"});
    ASSERT_EQ(a.code, 0) << a.err;
    auto report = nlohmann::json::parse(a.out);
    EXPECT_LE(report["maxSup"].get<int>(), 2);
    EXPECT_GE(report["maxOrb"].get<int>(), 4);
}

TEST_F(CliFiles, CompileDot) {
    auto graph = write("p2.json", symhom::make_path(2).to_json());
    auto r = run({"--dot", "compile", "--shape", "pw", "--graph", graph, "--n", "2", "--m", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("digraph", 0), 0u);
}

TEST_F(CliFiles, WidthReportsCertificate) {
    auto graph = write("c4.json", symhom::make_cycle(4).to_json());
    auto text = run({"width", "td", "--graph", graph});
    ASSERT_EQ(text.code, 0) << text.err;
    EXPECT_NE(text.out.find("td = 3"), std::string::npos);
    auto js = run({"--json", "width", "tw", "--graph", graph});
    ASSERT_EQ(js.code, 0) << js.err;
    EXPECT_EQ(nlohmann::json::parse(js.out)["value"], 2);
}

TEST_F(CliFiles, OracleHom) {
    auto pattern = write("p2.json", symhom::make_path(2).to_json());
    nlohmann::json host = {{"n", 2}, {"m", 2}, {"weights", {{1, 1, "3"}, {2, 2, "1/2"}}}};
    auto h = write("host.json", host);
    auto r = run({"oracle", "hom", "--pattern", pattern, "--host", h});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("7/2"), std::string::npos);
}

TEST_F(CliFiles, MalformedJsonIsUsageError) {
    std::ofstream(path("bad.json")) << "{not json";
    EXPECT_EQ(run({"width", "tw", "--graph", path("bad.json")}).code, 2);
}

TEST(Cli, ReduceGadgets) {
    EXPECT_EQ(run({"reduce", "clique-grid", "--n", "1", "--seed", "3"}).code, 0);
    EXPECT_EQ(run({"reduce", "path", "--m", "2", "--seed", "3"}).code, 0);
}

TEST(Cli, SuiteIsDeterministic) {
    auto first = run({"suite", "width", "--seed", "1"});
    auto second = run({"suite", "width", "--seed", "1"});
    ASSERT_EQ(first.code, 0) << first.err;
    EXPECT_EQ(first.out, second.out);
    EXPECT_TRUE(nlohmann::json::parse(first.out)["pass"].get<bool>());
}
