// End-to-end tests of the command-line binary. The binary path and the demo
// directory come in as arguments so the suite runs against whatever the
// build produced:
//
//   cli_test <path-to-cubsym> <path-to-demo-dir>
//
// Exit-code contract under test: 0 ok, 1 verification mismatch, 2 parse or
// usage error, 3 symmetry violation, 4 budget exceeded.

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

using nlohmann::json;

std::string g_binary;
std::string g_demo_dir;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args) {
    static int counter = 0;
    std::string err_path = "/tmp/cubsym_cli_test_" +
                           std::to_string(getpid()) + "_" +
                           std::to_string(counter++) + ".err";
    std::string cmd = g_binary + " " + args + " 2>" + err_path;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed");
    RunResult r;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0)
        r.out.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err_path);
    std::remove(err_path.c_str());
    return r;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

TEST(CliDerive, TextOutputPinned) {
    RunResult r = run("derive");
    EXPECT_EQ(r.exit_code, 0) << r.err;
    std::vector<std::string> ls = lines(r.out);
    ASSERT_EQ(ls.size(), 10u);
    EXPECT_EQ(ls[0], "E10^2 - 2*E20 - L^2 = 0");
    EXPECT_EQ(ls[1], "E01^2 - 2*E02 - 2*L^2 = 0");
    for (const std::string& l : ls)
        EXPECT_TRUE(l.size() > 4 && l.substr(l.size() - 4) == " = 0") << l;
}

TEST(CliDerive, OnlyFilter) {
    RunResult r = run("derive --only F3");
    EXPECT_EQ(r.exit_code, 0);
    std::vector<std::string> ls = lines(r.out);
    ASSERT_EQ(ls.size(), 1u);
    EXPECT_EQ(ls[0],
              "E10^3 - E10*E01^2 - 3*E10*L^2 - 6*E30 + 2*E01*E11 - 2*E12 "
              "= 0");
    EXPECT_EQ(run("derive --only Z9").exit_code, 2);
}

TEST(CliDerive, JsonCatalogRoundTrips) {
    RunResult r = run("derive --format json");
    ASSERT_EQ(r.exit_code, 0);
    json doc = json::parse(r.out);
    ASSERT_TRUE(doc.is_array());
    ASSERT_EQ(doc.size(), 10u);
    EXPECT_EQ(doc[0]["id"], "F1");
    EXPECT_EQ(doc[0]["paper_eq"], "4.4");
    EXPECT_EQ(doc[0]["lhs"], "E10^2 - 2*E20 - L^2");
    const char* ids[] = {"F1", "F2", "F3", "F4", "F5",
                         "F6", "L1", "L2", "F7", "F8"};
    for (std::size_t i = 0; i < doc.size(); ++i)
        EXPECT_EQ(doc[i]["id"], ids[i]);

    // Re-verifying every emitted expression gives the same verdicts as
    // verifying the catalog by id.
    for (const json& item : doc) {
        std::string lhs = item["lhs"].get<std::string>();
        RunResult by_expr = run("verify '" + lhs + "'");
        RunResult by_id = run("verify " + item["id"].get<std::string>());
        EXPECT_EQ(by_expr.exit_code, 0) << lhs;
        EXPECT_EQ(by_expr.exit_code, by_id.exit_code);
    }
}

TEST(CliDerive, JsonTraces) {
    RunResult r = run("derive --format json --traces");
    ASSERT_EQ(r.exit_code, 0);
    json doc = json::parse(r.out);
    ASSERT_EQ(doc.size(), 10u);
    EXPECT_EQ(doc[0]["target"], "E10^2");
    EXPECT_EQ(doc[0]["result_id"], "F1");
    for (const json& trace : doc) {
        ASSERT_FALSE(trace["steps"].empty());
        for (const json& step : trace["steps"]) {
            EXPECT_TRUE(step.contains("rule"));
            EXPECT_TRUE(step.contains("poly"));
        }
        EXPECT_EQ(trace["steps"].back()["rule"], "normalize");
    }
    EXPECT_EQ(doc[6]["result_id"], "L1");
    EXPECT_EQ(doc[6]["target"], "F5 - F6");
    EXPECT_EQ(doc[6]["steps"][0]["rule"], "combine");
}

TEST(CliDerive, OutFileMatchesStdout) {
    std::string path = "/tmp/cubsym_cli_test_catalog_" +
                       std::to_string(getpid()) + ".txt";
    RunResult direct = run("derive");
    RunResult filed = run("derive --out " + path);
    EXPECT_EQ(filed.exit_code, 0);
    EXPECT_TRUE(filed.out.empty());
    EXPECT_EQ(slurp(path), direct.out);
    std::remove(path.c_str());
}

TEST(CliDerive, ByteIdenticalReruns) {
    EXPECT_EQ(run("derive").out, run("derive").out);
    std::string flags = "check-numeric --samples 200 --seed 7";
    std::string a = run(flags).out;
    EXPECT_EQ(a, run(flags).out);
    EXPECT_NE(a, run("check-numeric --samples 200 --seed 8").out);
}

TEST(CliVerify, CatalogIdAndExpressions) {
    RunResult member = run("verify F5");
    EXPECT_EQ(member.exit_code, 0);
    EXPECT_NE(member.out.find("F5: member"), std::string::npos);

    RunResult tampered = run("verify 'E10^2 - 2*E20 - 3*L^2'");
    EXPECT_EQ(tampered.exit_code, 1);
    EXPECT_NE(tampered.out.find("non-member"), std::string::npos);
    EXPECT_NE(tampered.out.find("-2*x1^2 - 2*x2^2 - 2*x3^2"),
              std::string::npos);

    EXPECT_EQ(run("verify 'x1^2 + x2^2 - d3^2'").exit_code, 0);

    RunResult bad = run("verify 'x1^2 +'");
    EXPECT_EQ(bad.exit_code, 2);
    EXPECT_NE(bad.err.find("parse error"), std::string::npos);

    // Not a catalog id and not a known variable.
    EXPECT_EQ(run("verify F9").exit_code, 2);
}

TEST(CliVerify, DefaultVerifiesWholeCatalog) {
    RunResult r = run("verify");
    EXPECT_EQ(r.exit_code, 0);
    std::vector<std::string> ls = lines(r.out);
    ASSERT_EQ(ls.size(), 10u);
    for (const std::string& l : ls)
        EXPECT_NE(l.find(": member"), std::string::npos) << l;
}

TEST(CliVerify, JsonReport) {
    RunResult r = run("verify F1 'E10^2 - 2*E20 - 3*L^2' --format json");
    EXPECT_EQ(r.exit_code, 1);
    json doc = json::parse(r.out);
    EXPECT_EQ(doc["command"], "verify");
    EXPECT_EQ(doc["status"], "failed");
    ASSERT_EQ(doc["items"].size(), 2u);
    EXPECT_EQ(doc["items"][0]["verdict"], "member");
    EXPECT_TRUE(doc["items"][0].contains("certificate_steps"));
    EXPECT_EQ(doc["items"][1]["verdict"], "non-member");
    EXPECT_EQ(doc["items"][1]["remainder"],
              "-2*x1^2 - 2*x2^2 - 2*x3^2");
}

TEST(CliDecompose, PinnedExamples) {
    RunResult power = run("decompose 'x1^2 + x2^2 + x3^2'");
    EXPECT_EQ(power.exit_code, 0);
    std::vector<std::string> ls = lines(power.out);
    ASSERT_EQ(ls.size(), 2u);
    EXPECT_EQ(ls[0], "E10^2 - 2*E20");
    EXPECT_EQ(ls[1], "round-trip: ok");

    RunResult dot = run("decompose 'x1*d1 + x2*d2 + x3*d3'");
    EXPECT_EQ(dot.exit_code, 0);
    EXPECT_EQ(lines(dot.out)[0], "E10*E01 - E11");

    RunResult asym = run("decompose x1");
    EXPECT_EQ(asym.exit_code, 3);
    EXPECT_NE(asym.err.find("permutation (1 2)"), std::string::npos);

    // Inputs already holding E-variables are rejected as usage errors.
    EXPECT_EQ(run("decompose 'E10 + x1'").exit_code, 2);
}

TEST(CliCheckNumeric, ToleranceGate) {
    RunResult ok = run("check-numeric --samples 1000 --seed 42");
    EXPECT_EQ(ok.exit_code, 0);
    std::vector<std::string> ls = lines(ok.out);
    ASSERT_EQ(ls.size(), 11u);
    EXPECT_NE(ls[0].find("F1: max residual"), std::string::npos);
    EXPECT_NE(ls[10].find("-> ok"), std::string::npos);

    RunResult tight =
        run("check-numeric --samples 100 --seed 42 --tolerance 1e-30");
    EXPECT_EQ(tight.exit_code, 1);
    EXPECT_NE(tight.out.find("-> exceeded"), std::string::npos);

    EXPECT_EQ(run("check-numeric --samples 0").exit_code, 2);
}

TEST(CliCheckNumeric, JsonReport) {
    RunResult r = run("check-numeric --samples 50 --seed 42 --format json");
    ASSERT_EQ(r.exit_code, 0);
    json doc = json::parse(r.out);
    EXPECT_EQ(doc["command"], "check-numeric");
    EXPECT_EQ(doc["status"], "ok");
    EXPECT_EQ(doc["samples"], 50);
    EXPECT_EQ(doc["seed"], 42);
    ASSERT_EQ(doc["items"].size(), 10u);
    double max = doc["max_residual"].get<double>();
    EXPECT_GT(max, 0.0);
    EXPECT_LT(max, 1e-9);
}

TEST(CliGroebner, TwistedCubicElimination) {
    std::string file = g_demo_dir + "/twisted_cubic.txt";
    RunResult r = run("groebner " + file + " --vars x,y,z --eliminate x");
    EXPECT_EQ(r.exit_code, 0) << r.err;
    EXPECT_NE(r.out.find("y^3 - z^2"), std::string::npos);
    // Only kept-variable elements appear.
    EXPECT_EQ(r.out.find("x"), std::string::npos);

    RunResult full = run("groebner " + file + " --vars x,y,z --order lex");
    EXPECT_EQ(full.exit_code, 0);
    EXPECT_GE(lines(full.out).size(), 2u);
}

TEST(CliGroebner, BudgetExceededStatistics) {
    std::string file = g_demo_dir + "/symmetric_quotient.txt";
    std::string flags =
        " --cuboid --eliminate x1,x2,x3,d1,d2,d3 --budget 10";
    RunResult r = run("groebner " + file + flags);
    EXPECT_EQ(r.exit_code, 4);
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(r.err.find("budget exceeded after 10 pair reductions"),
              std::string::npos);

    RunResult j = run("groebner " + file + flags + " --format json");
    EXPECT_EQ(j.exit_code, 4);
    json doc = json::parse(j.out);
    EXPECT_EQ(doc["status"], "budget-exceeded");
    EXPECT_EQ(doc["pairs_processed"], 10);
    EXPECT_GT(doc["basis_size"].get<long>(), 0);

    // The six quadratic generators alone eliminate comfortably inside the
    // default budget; they carry no E-variable content, so the kept list is
    // empty but the run succeeds.
    std::string six = "/tmp/cubsym_cli_test_six_" +
                      std::to_string(getpid()) + ".txt";
    {
        std::ofstream f(six);
        f << "x1^2 + x2^2 - d3^2\nd3^2 + x3^2 - L^2\n"
          << "x2^2 + x3^2 - d1^2\nd1^2 + x1^2 - L^2\n"
          << "x3^2 + x1^2 - d2^2\nd2^2 + x2^2 - L^2\n";
    }
    RunResult fine =
        run("groebner " + six + " --cuboid --eliminate x1,x2,x3,d1,d2,d3");
    EXPECT_EQ(fine.exit_code, 0) << fine.err;
    std::remove(six.c_str());
}

TEST(CliGroebner, UsageErrors) {
    EXPECT_EQ(run("groebner /nonexistent.txt --vars x,y").exit_code, 2);
    std::string file = g_demo_dir + "/twisted_cubic.txt";
    EXPECT_EQ(run("groebner " + file).exit_code, 2);
    EXPECT_EQ(run("groebner " + file + " --vars x,y,z --eliminate w")
                  .exit_code,
              2);
}

TEST(CliGeneral, HelpAndBadUsage) {
    RunResult help = run("--help");
    EXPECT_EQ(help.exit_code, 0);
    EXPECT_NE(help.out.find("derive"), std::string::npos);
    EXPECT_EQ(run("").exit_code, 2);
    EXPECT_EQ(run("frobnicate").exit_code, 2);
}

}  // namespace

int main(int argc, char** argv) {
    ::testing::InitGoogleTest(&argc, argv);
    if (argc < 3) {
        std::fprintf(stderr,
                     "usage: cli_test <cubsym-binary> <demo-dir>\n");
        return 1;
    }
    g_binary = argv[1];
    g_demo_dir = argv[2];
    return RUN_ALL_TESTS();
}
