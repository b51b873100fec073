#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "wsu/cli.hpp"
#include "wsu/wsu.hpp"

using namespace wsu;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) { return std::filesystem::temp_directory_path() / ("wsu_cli_" + name); }

class EnvVar {
 public:
  EnvVar(const char* name, const char* value) : name_(name) { ::setenv(name, value, 1); }
  ~EnvVar() { ::unsetenv(name_); }

 private:
  const char* name_;
};

}  // namespace

TEST(Cli, AnalyzeA4) {
  const auto r = run({"analyze", "alternating:4"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("WSupersoluble false"), std::string::npos);
  EXPECT_NE(r.out.find("order 12"), std::string::npos);
  const auto s = run({"analyze", "alternating:4", "--format", "structured"});
  EXPECT_NE(s.out.find("group=alternating:4 predicate=WSupersoluble value=false"), std::string::npos);
}

TEST(Cli, ResidualOfTrivial) {
  const auto r = run({"residual", "trivial", "--formation", "Nilpotent"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("residual_order=1"), std::string::npos) << r.out;
}

TEST(Cli, ResidualOfA4) {
  const auto r = run({"residual", "paper:a4", "--formation", "WSupersoluble"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("residual_order=4"), std::string::npos) << r.out;
}

TEST(Cli, PsnVerdicts) {
  const auto no = run({"psn", "alternating:4", "--subgroup", "sylow:3"});
  EXPECT_EQ(no.code, 0);
  EXPECT_NE(no.out.find("p_subnormal=false"), std::string::npos);
  const auto yes = run({"psn", "alternating:4", "--subgroup", "sylow:2"});
  EXPECT_NE(yes.out.find("p_subnormal=true"), std::string::npos);
  EXPECT_NE(yes.out.find("witness H0 (order 4) < G (order 12) [3]"), std::string::npos) << yes.out;
}

TEST(Cli, ExportRoundTrip) {
  const auto path = temp_path("export.txt");
  const auto r = run({"export", "product(cyclic:2,symmetric:3)", "--cayley", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto g = load_group_file(path.string());
  EXPECT_TRUE(is_isomorphic(g, direct_product(cyclic(2), symmetric(3))).isomorphic);
  const auto again = run({"analyze", "file:" + path.string()});
  EXPECT_EQ(again.code, 0);
  std::filesystem::remove(path);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"residual", "cyclic:4"}).code, 2);
  EXPECT_EQ(run({"residual", "cyclic:4", "--formation", "Bogus"}).code, 2);
  EXPECT_EQ(run({"verify", "everything"}).code, 2);
  EXPECT_EQ(run({"verify", "theorems", "--max-order", "400"}).code, 2);
  EXPECT_EQ(run({"verify", "theorems", "--suite", "lemma9.9"}).code, 2);
  EXPECT_EQ(run({"--inject-fault", "no-such-fault", "analyze", "cyclic:2"}).code, 2);
}

TEST(Cli, BadGroupExpressionFails) {
  const auto r = run({"analyze", "cyclic:"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(Cli, VerifyExamples) {
  const auto r = run({"verify", "examples"});
  EXPECT_EQ(r.code, 0) << r.err;
  for (auto id : kAllPaperGroups) EXPECT_NE(r.out.find(std::string(to_string(id))), std::string::npos);
}

TEST(Cli, VerifyTheoremsSmallCorpusIsDeterministic) {
  const auto a = run({"verify", "theorems", "--max-order", "24", "--format", "structured"});
  const auto b = run({"verify", "theorems", "--max-order", "24", "--format", "structured", "--parallelism", "3"});
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("record=summary"), std::string::npos);
  EXPECT_NE(a.out.find("status=pass"), std::string::npos);
}

TEST(Cli, ReportAndManifestFiles) {
  const auto report = temp_path("report.txt"), manifest = temp_path("manifest.txt");
  const auto r = run({"verify", "theorems", "--max-order", "12", "--suite", "lattice", "--report", report.string(), "--manifest",
                      manifest.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto text = read_file(report.string());
  EXPECT_NE(text.find("lattice:"), std::string::npos);
  const auto lines = read_file(manifest.string());
  EXPECT_EQ(static_cast<std::size_t>(std::count(lines.begin(), lines.end(), '\n')), corpus_generate(12).size());
  std::filesystem::remove(report);
  std::filesystem::remove(manifest);
}

TEST(Cli, InjectedFaultFailsVerification) {
  const auto r = run({"--inject-fault", "wsupersoluble-means-soluble", "verify", "theorems", "--max-order", "24"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("first counterexample"), std::string::npos);
  // The fault does not leak out of the command.
  EXPECT_FALSE(wsu::testing::any_fault());
  EXPECT_FALSE(is_w_supersoluble(symmetric(4)));
}

TEST(Cli, CapsFromEnvironment) {
  {
    EnvVar v("WSU_LATTICE_CAP", "20");
    EXPECT_EQ(run({"verify", "theorems", "--max-order", "24"}).code, 2);
    EXPECT_EQ(run({"analyze", "cyclic:30"}).code, 1);
    EXPECT_EQ(run({"--order-cap", "40", "analyze", "cyclic:30"}).code, 0);
  }
  {
    EnvVar v("WSU_ORDER_CAP", "10");
    EXPECT_EQ(run({"analyze", "cyclic:12"}).code, 1);
  }
  {
    EnvVar v("WSU_ORDER_CAP", "many");
    EXPECT_EQ(run({"analyze", "cyclic:12"}).code, 2);
  }
  EXPECT_EQ(order_cap(), 2000u);
  EXPECT_EQ(lattice_cap(), kDefaultLatticeCap);
}

TEST(Cli, BinaryExitStatus) {
  const std::string bin = WSU_CLI_PATH;
  const auto out = temp_path("binary.txt");
  EXPECT_EQ(std::system((bin + " analyze alternating:4 > " + out.string()).c_str()), 0);
  EXPECT_NE(read_file(out.string()).find("WSupersoluble false"), std::string::npos);
  const int status = std::system((bin + " bogus > " + out.string() + " 2>&1").c_str());
  EXPECT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 2);
  std::filesystem::remove(out);
}
