#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace
{

struct Result {
    int code = -1;
    std::string out;
};

// Runs the CLI with stderr discarded.
Result run(const std::string &args, const std::string &env = "")
{
    const std::string cmd = env + (env.empty() ? "" : " ") + FEYNID_CLI + std::string(" ") + args + " 2>/dev/null";
    Result r;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        return r;
    }
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

nlohmann::json parse(const Result &r)
{
    return nlohmann::json::parse(r.out);
}

} // namespace

TEST(Cli, ThetaExample)
{
    const auto r = run("theta --r 2 --N 4");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "{\"theta_plus\":10,\"theta_minus\":8}\n");
}

TEST(Cli, SignExample)
{
    const auto r = run("sign --word \"1:3,2:2,1:1,3:2,2:3\"");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "{\"sign\":1,\"N\":11,\"l\":5,\"s\":0,\"T\":3,\"t\":1}\n");
}

TEST(Cli, VerifyFeynman)
{
    const auto r = run("verify feynman --R 2 --D 6");
    EXPECT_EQ(r.code, 0);
    const auto j = parse(r);
    EXPECT_EQ(j["identity"], "feynman");
    EXPECT_EQ(j["status"], "pass");
    EXPECT_EQ(r.out.rfind("{\"identity\":\"feynman\",\"status\":\"pass\"", 0), 0u);
}

TEST(Cli, VerificationFailureExitCode)
{
    const auto r = run("verify feynman --R 2 --D 6 --corrupt-factor 0");
    EXPECT_EQ(r.code, 3);
    const auto j = parse(r);
    EXPECT_EQ(j["status"], "fail");
    EXPECT_EQ(j["first_mismatch"]["term"], "z1*z2");
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("theta --r 2 --N 4 --bogus").code, 2);
    EXPECT_EQ(run("theta --r 2").code, 2);
    EXPECT_EQ(run("theta --r 2 --N 0").code, 2);
    EXPECT_EQ(run("theta --r 2 --N 4 --format xml").code, 2);
    EXPECT_EQ(run("sign --word \"1:2,1:3\"").code, 2);
    EXPECT_EQ(run("sign --word \"1:1,2:0\"").code, 2);
    EXPECT_EQ(run("sign --word \"1:x\"").code, 2);
    EXPECT_EQ(run("census --r 2").code, 2);
    EXPECT_EQ(run("census --r 2 --N 3 --m 1,2").code, 2);
    EXPECT_EQ(run("verify partial_product --r 2 --n 3").code, 2);
    EXPECT_EQ(run("theta --r 2 --N 4", "FEYNID_BUDGET=abc").code, 2);
    EXPECT_EQ(run("theta --r 2 --N 4 --budget -5").code, 2);
}

TEST(Cli, ScopeErrors)
{
    EXPECT_EQ(run("enumerate --r 2 --N 1").code, 4);
    EXPECT_EQ(run("census --r 3 --N 9 --budget 1000").code, 4);
    EXPECT_EQ(run("census --r 3 --N 9", "FEYNID_BUDGET=1000").code, 4);
    EXPECT_EQ(run("census --r 3 --N 5", "FEYNID_BUDGET=1000000").code, 0);
    EXPECT_EQ(run("census --r 2 --m 2,0").code, 4);
    EXPECT_EQ(run("series --name f_ccw --r 2 --D 65").code, 4);
    EXPECT_EQ(run("series --name f_ccw --r 2 --D 65 --max-degree 80").code, 0);
}

TEST(Cli, CensusJson)
{
    const auto j = parse(run("census --r 2 --N 2"));
    EXPECT_EQ(j["r"], 2);
    EXPECT_EQ(j["scope"]["N"], 2);
    EXPECT_EQ(j["word_total"], 8);
    EXPECT_EQ(j["theta_plus"], 2);
    EXPECT_EQ(j["theta_minus"], 2);
    EXPECT_EQ(j["ccw_classes"], 1);
    EXPECT_EQ(j["histogram"].size(), 3u);
    const auto m = parse(run("census --r 2 --m 2,2"));
    EXPECT_EQ(m["scope"]["m"], nlohmann::json::parse("[2,2]"));
    EXPECT_EQ(m["theta_plus"], 6);
    EXPECT_EQ(m["theta_minus"], 4);
}

TEST(Cli, CsvAndPlain)
{
    const auto csv = run("census --r 2 --N 2 --format csv");
    EXPECT_EQ(csv.code, 0);
    EXPECT_EQ(csv.out, "l,s,T,count\n2,0,1,2\n2,1,1,4\n2,2,1,2\n");
    EXPECT_EQ(run("theta --r 2 --N 4 --format csv").out, "theta_plus,theta_minus\n10,8\n");
    const auto plain = run("dims --r 2 --N 3 --format plain");
    EXPECT_EQ(plain.code, 0);
    EXPECT_NE(plain.out.find("dim_L"), std::string::npos);
}

TEST(Cli, Enumerate)
{
    const auto j = parse(run("enumerate --r 2 --N 3"));
    EXPECT_EQ(j["count"], 16);
    EXPECT_EQ(j["words"][0], "1:2,2:1");
    EXPECT_EQ(parse(run("enumerate --r 1 --N 3 --filter ccw"))["words"], nlohmann::json::parse("[\"1:3\"]"));
    EXPECT_EQ(parse(run("enumerate --r 3 --N 7 --count-only"))["count"], parse(run("census --r 3 --N 7"))["word_total"].get<int>());
}

TEST(Cli, SignRoundTrip)
{
    // every accepted word re-serialises identically; the sign command echoes its data
    const auto words = parse(run("enumerate --r 3 --N 4"))["words"];
    ASSERT_GT(words.size(), 0u);
    for (std::size_t i = 0; i < words.size(); i += 7) {
        const std::string w = words[i].get<std::string>();
        const auto r = run("sign --word \"" + w + "\"");
        ASSERT_EQ(r.code, 0) << w;
        EXPECT_EQ(parse(r)["N"], 4);
    }
    EXPECT_EQ(run("sign --word \" 1:1 , 2:-1 \"").code, 0);
}

TEST(Cli, ThetaKinds)
{
    EXPECT_EQ(run("theta --kind ccw --r 2 --N 4").out, "{\"theta_ccw\":3}\n");
    EXPECT_EQ(run("theta --kind total --R 2 --N 10").out, "{\"theta\":99}\n");
    EXPECT_EQ(run("theta --kind total --R 2 --N 10 --route binomial_sum").out, "{\"theta\":99}\n");
    EXPECT_EQ(run("theta --r 3 --N 6 --route word_sum").out, "{\"theta_plus\":1120,\"theta_minus\":1112}\n");
    EXPECT_EQ(run("theta --kind total --r 2 --N 10").code, 2);
}

TEST(Cli, WittDimsSeries)
{
    const auto w = parse(run("witt --r 2 --n 4"));
    EXPECT_EQ(w["values"][3]["ccw"]["num"], 7);
    EXPECT_EQ(w["values"][3]["ccw"]["den"], 2);
    const auto d = parse(run("dims --r 2 --N 5"));
    EXPECT_EQ(d["rows"][3]["dim_L"], 18);
    EXPECT_EQ(d["rows"][4]["d_signed"], 16);
    const auto s = parse(run("series --name f_ccw --r 3 --D 5"));
    EXPECT_EQ(s["max_degree"], 5);
    EXPECT_EQ(s["terms"][0]["exponents"], nlohmann::json::parse("[3]"));
    EXPECT_EQ(s["terms"][2]["num"], 30);
    const auto g = parse(run("series --name g_ccw --r 1 --D 3"));
    EXPECT_EQ(g["terms"][2]["den"], 3);
}

TEST(Cli, AllVerifyCommandsEmitJson)
{
    const char *cmds[] = {
        "verify partial_product --r 2 --n 6", "verify theorem32 --r 2 --maxN 6",          "verify witt_routes --R 3 --maxN 8",
        "verify denominator --kind bouquet --R 3 --D 10", "verify denominator --kind ccw --r 2 --D 10",
        "verify denominator --kind signed --r 3 --D 10", "verify exp_log --r 3 --D 10 --mode signed",
        "verify exp_log --r 4 --D 10",
    };
    for (const char *c : cmds) {
        const auto r = run(c);
        EXPECT_EQ(r.code, 0) << c;
        EXPECT_EQ(parse(r)["status"], "pass") << c;
    }
}

TEST(Cli, Determinism)
{
    for (const char *c : {"census --r 3 --N 6", "verify feynman --R 3 --D 5", "dims --r 3 --N 8 --format csv", "verify all --preset smoke"}) {
        EXPECT_EQ(run(c).out, run(c).out) << c;
    }
}

TEST(Cli, OutFileMirrorsStdout)
{
    const std::string path = "feynid_cli_out_test.json";
    const auto r = run("witt --r 3 --n 5 --out " + path);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), r.out);
    std::remove(path.c_str());
}

TEST(Cli, VerifyAllSmoke)
{
    const auto r = run("verify all --preset smoke");
    EXPECT_EQ(r.code, 0);
    const auto j = parse(r);
    EXPECT_EQ(j["status"], "pass");
    EXPECT_EQ(j["criteria"].size(), 13u);
    const auto csv = run("verify all --preset smoke --format csv");
    EXPECT_EQ(csv.out.rfind("criterion,name,status,detail\n", 0), 0u);
}
