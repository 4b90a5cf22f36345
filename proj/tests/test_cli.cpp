#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Result {
    int code;
    std::string out;
};

Result run(const std::string& args) {
    std::string cmd = std::string(HEIS_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST(Cli, NormalizeIdentity) {
    Result r = run("normalize \"up up | s@0 ; s@0\" --charge -1");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "[0->2:0, 1->3:0]\n");
}

TEST(Cli, NormalizeBubble) {
    Result r = run("normalize \". | cup_r@0 ; cap_l@0\" --charge -1");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "1\n");
}

TEST(Cli, NormalizeJson) {
    Result r = run("normalize \"down up | t'@0 ; t@0\" --charge -1 --format json");
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["source"], "down up");
    EXPECT_EQ(j["terms"].size(), 2u);
}

TEST(Cli, NormalizeFromFile) {
    std::string path = ::testing::TempDir() + "heis_term.txt";
    std::ofstream(path) << "up | dot@0 ; dot@0\n";
    Result r = run("normalize --input " + path + " --charge 0");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "[0->1:2]\n");
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("normalize \"up ( \"").code, 2);
    EXPECT_EQ(run("normalize \"up | cap_r@0\"").code, 2);
    EXPECT_EQ(run("normalize \"up | dot@0^5\" --max-dots 2").code, 3);
    EXPECT_EQ(run("check nonsense").code, 2);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("eval \"up | \" --f \"2*u\"").code, 2);
}

TEST(Cli, Eval) {
    Result a = run("eval \"up | dot@0\" --f \"u+2\"");
    EXPECT_EQ(a.code, 0);
    EXPECT_NE(a.out.find("[[-2]]"), std::string::npos);
    Result b = run("eval \"up | \" --f \"u^2\" --format json");
    EXPECT_EQ(nlohmann::json::parse(b.out)["matrix"], nlohmann::json::parse(R"([["1","0"],["0","1"]])"));
    Result c = run("eval \"down | \" --f u --format json");
    EXPECT_EQ(c.code, 0);
    EXPECT_TRUE(nlohmann::json::parse(c.out)["matrix"].empty());
}

TEST(Cli, CheckDerived) {
    Result r = run("check derived --f u --nmax 2");
    EXPECT_EQ(r.code, 0);
    Result j = run("check khovanov --format json");
    EXPECT_EQ(j.code, 0);
    EXPECT_EQ(nlohmann::json::parse(j.out)["suite"], "khovanov");
}

TEST(Cli, CheckIndependence) {
    Result r = run("check independence --source up --target up --max-dots 2 --pool u --pool u+1 --pool u^2");
    EXPECT_EQ(r.code, 0);
    Result bad = run("check independence --source up --target up --pool u");
    EXPECT_EQ(bad.code, 1);
}

TEST(Cli, Series) {
    Result r = run("series --f \"u+1\" --fprime 1 --order 3");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "1, -1, 1, -1\n");
}

TEST(Cli, Basis) {
    Result r = run("basis \"up down\" \"down up\" --max-dots 0");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("2 matchings"), std::string::npos);
    Result j = run("basis up up --max-dots 2 --format json");
    EXPECT_EQ(nlohmann::json::parse(j.out).size(), 3u);
}
