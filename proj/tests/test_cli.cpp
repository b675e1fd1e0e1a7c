#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <sstream>

#include "cli.hpp"

using thom::io::Json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "thom");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = thom::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

// Runs the installed binary through the shell; stdout only.
Result spawn(const std::string& args) {
    const std::string cmd = std::string(THOM_BINARY) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, ""};
}

const std::string data_dir = THOM_DATA_DIR;
const std::string sigma1_poly = R"({"terms":[{"mono":{"c.1":1},"coeff":"-1"},{"mono":{"c'.1":1},"coeff":"1"}]})";

}  // namespace

TEST(Cli, Conjugate) {
    const auto r = run({"conjugate", "[3,1]"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "[2,1,1]\n");
}

TEST(Cli, Schur) {
    const auto r = run({"schur", "[2]", "--family", "c'"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(thom::io::polynomial_from_json(Json::parse(r.out)),
              thom::schur_in_elementary(thom::Partition({2}), thom::fam::cprime));
}

TEST(Cli, ExpandUsesThePolynomialsFamily) {
    const auto r = run({"expand", R"({"terms":[{"mono":{"c'.1":2},"coeff":"1"}]})"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "{\"[2]\":\"1\",\"[1,1]\":\"1\"}\n");
    EXPECT_EQ(run({"expand", sigma1_poly}).code, 1);
}

TEST(Cli, LrAndGrassmann) {
    EXPECT_EQ(run({"lr", "[1]", "[1]"}).out, "{\"[2]\":\"1\",\"[1,1]\":\"1\"}\n");
    EXPECT_EQ(run({"grassmann", "product", "--n", "2", "--N", "4", "[2]", "[2]"}).out, "{\"[2,2]\":\"1\"}\n");
    EXPECT_EQ(run({"grassmann", "pair", "--n", "2", "--N", "4", "[2]", "[2]"}).out, "1\n");
    const auto oob = run({"grassmann", "pair", "--n", "2", "--N", "4", "[3]", "[1]"});
    EXPECT_EQ(oob.code, 1);
    EXPECT_EQ(Json::parse(oob.err).at("error"), "OutOfBox");
}

TEST(Cli, RelchernOfEqualSeriesIsOne) {
    const std::string s = thom::io::to_json(thom::ChernSeries::symbolic(thom::fam::c, 3)).dump();
    const auto r = run({"relchern", s, s});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(thom::io::chern_series_from_json(Json::parse(r.out)).is_one());
    const auto t = run({"relchern", s, s, "--trunc", "2"});
    EXPECT_EQ(thom::io::chern_series_from_json(Json::parse(t.out)).truncation(), 2);
    EXPECT_EQ(run({"relchern", s, s, "--trunc", "5"}).code, 1);
}

TEST(Cli, Twist) {
    const std::string s = thom::io::to_json(thom::ChernSeries::symbolic(thom::fam::c, 2)).dump();
    const auto r = run({"twist", s, "--rank", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(thom::io::chern_series_from_json(Json::parse(r.out)),
              thom::twist_by_line(thom::ChernSeries::symbolic(thom::fam::c, 2, 2)));
    EXPECT_EQ(run({"twist", s}).code, 2);
}

TEST(Cli, ComposeAndLocalAlgebra) {
    const std::string zz = R"({"n":1,"k":1,"d":2,"coeffs":[{"[1]":"1","[2]":"1"}]})";
    EXPECT_EQ(run({"compose", zz, zz}).out, "{\"n\":1,\"k\":1,\"d\":2,\"coeffs\":[{\"[1]\":\"1\",\"[2]\":\"2\"}]}\n");
    const std::string morse = R"({"n":1,"k":1,"d":3,"coeffs":[{"[2]":"1"}]})";
    EXPECT_EQ(run({"localalg", morse}).out,
              "{\"dimension\":1,\"hilbert\":[1,0,0],\"nilpotency_index\":2,\"pairing_ranks\":[]}\n");
}

TEST(Cli, OracleAndMod2) {
    const auto r = run({"oracle", "sigma1", "--k", "1"});
    EXPECT_EQ(r.code, 0);
    const auto e = thom::io::catalogue_entry_from_json(Json::parse(r.out));
    EXPECT_EQ(e.poly, thom::sigma1_oracle(1, 1).poly);
    EXPECT_EQ(run({"oracle", "sigma1", "--k", "3", "--n", "2"}).code, 0);
    EXPECT_EQ(run({"oracle", "sigma1", "--k", "1", "--n", "2"}).code, 1);
    EXPECT_EQ(run({"mod2", sigma1_poly}).out,
              "{\"terms\":[{\"mono\":{\"w.1\":1},\"coeff\":\"1\"},{\"mono\":{\"w'.1\":1},\"coeff\":\"1\"}]}\n");
    const auto half = run({"mod2", R"({"terms":[{"mono":{"c.1":1},"coeff":"1/2"}]})"});
    EXPECT_EQ(half.code, 1);
    EXPECT_EQ(Json::parse(half.err).at("error"), "NonIntegral");
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"lr", "[1]"}).code, 2);
    EXPECT_EQ(run({"grassmann", "sum", "--n", "1", "--N", "2", "[]", "[]"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, DomainErrorsExitOneWithJsonDiagnostic) {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"conjugate", "[1,2]"}, {"conjugate", "/nonexistent/file.json"}, {"conjugate", "[1,"}}) {
        const auto r = run(args);
        EXPECT_EQ(r.code, 1);
        const auto diag = Json::parse(r.err);
        EXPECT_TRUE(diag.contains("error"));
        EXPECT_TRUE(diag.contains("message"));
    }
}

TEST(Cli, HumanFlag) {
    EXPECT_EQ(run({"--human", "lr", "[1]", "[1]"}).out, "s[2] + s[1,1]\n");
    EXPECT_EQ(run({"lr", "[1]", "[1]", "--human"}).out, "s[2] + s[1,1]\n");
}

TEST(Cli, FileArguments) {
    const auto r = run({"verify", data_dir + "/sigma1.jsonl"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("PASS 4/4\n"), std::string::npos);
}

TEST(Cli, VerifyExitCodesAndByteStability) {
    const auto good1 = spawn(data_dir + "/sigma1.jsonl");
    EXPECT_EQ(good1.code, 2);  // missing subcommand
    const auto a = spawn("verify " + data_dir + "/catalogue.jsonl");
    const auto b = spawn("verify " + data_dir + "/catalogue.jsonl");
    EXPECT_EQ(a.code, 1);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("PASS 4/11\n"), std::string::npos);
    const auto controls = spawn("verify " + data_dir + "/controls.jsonl");
    EXPECT_EQ(controls.code, 1);
    EXPECT_NE(controls.out.find("PASS 0/7\n"), std::string::npos);
    const auto good = spawn("verify " + data_dir + "/sigma1.jsonl");
    EXPECT_EQ(good.code, 0);
}

TEST(Cli, OutputReparses) {
    const auto r = run({"verify", data_dir + "/catalogue.jsonl"});
    std::istringstream lines(r.out);
    std::string line;
    int reports = 0;
    while (std::getline(lines, line)) {
        if (line.rfind("PASS ", 0) == 0) continue;
        const auto j = Json::parse(line);
        EXPECT_TRUE(j.contains("damon_ok"));
        if (j.contains("relative_form")) thom::io::schur_expansion_from_json(j.at("relative_form"));
        ++reports;
    }
    EXPECT_EQ(reports, 11);
}
