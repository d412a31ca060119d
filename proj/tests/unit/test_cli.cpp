#include <json.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(PRIMEPOLY_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / ("primepoly_cli_" + name);
    std::ofstream(path) << text;
    return path.string();
}

std::string all_zero_assignment(char first, char last) {
    std::string s;
    for (char c = first; c <= last; ++c) s += std::string(1, c) + "=0\n";
    return s;
}

}  // namespace

TEST(Cli, EmitText) {
    const auto r = run("emit J:2 --format text");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "r1^2 - r2^2\n");
}

TEST(Cli, EmitJson) {
    const auto r = run("emit poly26 --format json");
    ASSERT_EQ(r.code, 0);
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["vars"].size(), 26u);
    EXPECT_FALSE(doc["terms"].empty());

    const auto d = run("emit poly10 --format json");
    ASSERT_EQ(d.code, 0);
    const auto dag = nlohmann::json::parse(d.out);
    EXPECT_EQ(dag["vars"].size(), 10u);
    EXPECT_EQ(dag["header"]["z_choice"], "L");
    EXPECT_EQ(nlohmann::json::parse(run("emit poly10 --format json --z-override Q").out)["header"]["z_choice"], "Q");
}

TEST(Cli, EmitBudgetExceeded) {
    EXPECT_EQ(run("emit poly10 --format json --budget 1000").code, 1);
    EXPECT_EQ(run("emit poly10 --format text").code, 2);
}

TEST(Cli, Eval) {
    const auto zeros = write_temp("zeros26", all_zero_assignment('a', 'z'));
    auto r = run("eval poly26 " + zeros);
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "6\n");

    const auto k1 = write_temp("k1", "y=7\nx1=1\nx2=1\nx3=1\n");
    r = run("eval K1 " + k1);
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "0\n");

    const auto ones = write_temp("ones3", "r1=1\nr2=1\nr3=1\n");
    r = run("eval J:3 " + ones);
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "-3\n");
}

TEST(Cli, Stats) {
    auto r = run("stats J:4 --format json");
    ASSERT_EQ(r.code, 0);
    auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["arity"], 4);
    EXPECT_EQ(doc["degree"], 8);

    r = run("stats poly10 --format json");
    ASSERT_EQ(r.code, 0);
    doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["arity"], 10);
    EXPECT_GT(doc["degree_estimate"].get<long>(), 6000);
    EXPECT_GT(doc["degree_bound"].get<long>(), 6000);

    r = run("stats K1");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("degree: 8"), std::string::npos);
}

TEST(Cli, Verify) {
    auto r = run("verify wilson --format json");
    ASSERT_EQ(r.code, 0);
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["suite"], "wilson");
    EXPECT_EQ(doc["failed"], 0);
    ASSERT_FALSE(doc["checks"].empty());
    for (const auto& c : doc["checks"]) {
        EXPECT_TRUE(c.contains("name"));
        EXPECT_TRUE(c.contains("params"));
        EXPECT_EQ(c["status"], "pass");
    }

    r = run("verify k1 --range x1=1..5 --range x2=1..5 --range x3=0..4");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("0 failed"), std::string::npos);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run("verify nosuch").code, 2);
    EXPECT_EQ(run("verify k1 --range bogus=1..2").code, 2);
    EXPECT_EQ(run("verify k1 --range x1=5").code, 2);
    EXPECT_EQ(run("emit L:3").code, 2);
    EXPECT_EQ(run("emit J:1").code, 2);
    EXPECT_EQ(run("emit K --z-override V").code, 2);
    EXPECT_EQ(run("").code, 2);
    const auto partial = write_temp("partial", "y=1\nx1=1\n");
    EXPECT_EQ(run("eval K1 " + partial).code, 2);
    EXPECT_EQ(run("eval K1 /nonexistent/file").code, 2);
}

TEST(Cli, Deterministic) {
    const auto a = run("verify j --format json");
    const auto b = run("verify j --format json");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(run("stats poly10 --seed 5").out, run("stats poly10 --seed 5").out);
}
