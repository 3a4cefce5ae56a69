#include "cli.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

std::string fixture(const std::string& name) { return std::string(QFP_FIXTURE_DIR) + "/" + name; }

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qfp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = qfp::tools::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

std::vector<std::string> keys(const nlohmann::json& j) {
  std::vector<std::string> k;
  for (auto it = j.begin(); it != j.end(); ++it) k.push_back(it.key());
  return k;
}

}  // namespace

TEST(Cli, OffDiagRankOfAllOnes) {
  const auto r = run({"offdiag-rank", fixture("allones5.mat")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = parse(r);
  EXPECT_EQ(j["value"], 1);
  EXPECT_EQ(run({"offdiag-rank", "--oracle", fixture("offdiag8_rank2.mat")}).code, 0);
  EXPECT_EQ(parse(run({"offdiag-rank", "--oracle", fixture("offdiag8_rank2.mat")}))["value"], 2);
}

TEST(Cli, MissingFileIsDomainError) {
  const auto r = run({"count", "badpath.mat", "--t", "5", "--X", "10"});
  EXPECT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(r.err);
  EXPECT_EQ(j["error"], "file not found");
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, UsageErrors) {
  const auto r = run({"decompose"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE((r.out + r.err).find("decompose"), std::string::npos);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"no-such-command"}).code, 2);
  EXPECT_EQ(run({"count", fixture("i4.mat"), "--t", "5", "--X", "1"}).code, 2);
}

TEST(Cli, HelpListsEverySubcommand) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  for (const char* cmd : {"offdiag-rank", "decompose", "classify", "singular-series", "count", "bilinear-count",
                          "arcs-report", "weyl-scan", "experiment", "verify"})
    EXPECT_NE(r.out.find(cmd), std::string::npos) << cmd;
}

TEST(Cli, DecomposeKeysDoNotDependOnInput) {
  std::vector<std::string> first;
  for (const char* f : {"rank1.mat", "case11.mat", "case21.mat", "case22.mat"}) {
    const auto r = run({"decompose", fixture(f)});
    ASSERT_EQ(r.code, 0) << f << r.err;
    const auto k = keys(parse(r));
    if (first.empty()) first = k;
    EXPECT_EQ(k, first) << f;
  }
}

TEST(Cli, DecomposeCase22ReportsQuintuple) {
  const auto j = parse(run({"decompose", fixture("case22.mat")}));
  EXPECT_EQ(j["kind"], "case22");
  EXPECT_TRUE(j["rank1"].is_null());
  EXPECT_EQ(j["quintuple"]["found"], true);
  EXPECT_EQ(j["quintuple"]["indices"].size(), 5u);
}

TEST(Cli, ClassifyRejectsRankOne) {
  const auto r = run({"classify", fixture("rank1.mat")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("NotOffDiagRank2"), std::string::npos);
}

TEST(Cli, CountHua) {
  const auto j = parse(run({"count", fixture("hua_I5.mat"), "--t", "53", "--X", "10"}));
  EXPECT_EQ(j["unit_count"], 20);
  EXPECT_EQ(j["prime_only_count"], 0);
}

TEST(Cli, SingularSeries) {
  const auto r = run({"singular-series", fixture("hua_I5.mat"), "--t", "53", "--Q", "24", "--primes", "2,3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = parse(r);
  EXPECT_EQ(j["normalization"], "phi_power_n");
  EXPECT_GT(j["product_estimate"].get<double>(), 0.0);
  const auto phi_once = parse(run({"singular-series", fixture("hua_I5.mat"), "--t", "53", "--Q", "8", "--primes", "2",
                                "--paper-normalization"}));
  EXPECT_EQ(phi_once["normalization"], "phi_once");
}

TEST(Cli, BilinearAndExperiments) {
  EXPECT_EQ(parse(run({"bilinear-count", "--C", fixture("bilinear_C.mat"), "--X", "4"}))["count"], 32);
  const auto g = run({"experiment", "growth", "--Xs", "5,10,20"});
  ASSERT_EQ(g.code, 0) << g.err;
  EXPECT_EQ(g.out.substr(0, g.out.find('\n')), "X,count,logX,logCount");
  const auto inj = parse(run({"experiment", "injection", "--C", fixture("bilinear_C.mat"), "--X", "3"}));
  EXPECT_EQ(inj["lhs"], 15);
  EXPECT_EQ(inj["rhs"], 1313);
  EXPECT_EQ(inj["holds"], true);
  const auto gen = run({"experiment", "generate", "--kind", "case21", "--n", "7", "--seed", "7"});
  EXPECT_EQ(gen.code, 0) << gen.err;
}

TEST(Cli, ArcsReportFormats) {
  const auto js = run({"arcs-report", fixture("i4.mat"), "--t", "100", "--X", "20", "--K", "1"});
  ASSERT_EQ(js.code, 0) << js.err;
  const auto j = parse(js);
  EXPECT_TRUE(j.contains("major_share"));
  const auto csv = run({"arcs-report", fixture("i4.mat"), "--t", "100", "--X", "20", "--K", "1", "--format", "csv"});
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "q,arcs,re,im");
}

TEST(Cli, WeylScanCsv) {
  const auto r = run({"weyl-scan", "--d", "1/2", "--X", "100", "--K", "1", "--grid", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "alpha,abs");
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"decompose", fixture("case21.mat")},
        std::vector<std::string>{"arcs-report", fixture("i4.mat"), "--t", "100", "--X", "20", "--K", "1"},
        std::vector<std::string>{"experiment", "generate", "--kind", "case22", "--n", "8", "--seed", "3"}}) {
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.code, 0) << a.err;
  }
}

TEST(Cli, VerifyScope) {
  const auto r = run({"verify", "offdiag-rank"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = parse(r);
  EXPECT_EQ(j["overall"], "pass");
  for (const auto& s : j["suites"]) EXPECT_EQ(s["module"], "offdiag-rank");
  EXPECT_EQ(run({"verify", "bogus"}).code, 2);
}
