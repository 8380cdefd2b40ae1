#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cubeharm/cli.hpp"

using namespace cubeharm;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cubeharm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string run_binary(const std::string& args, int& code) {
  const std::string cmd = std::string(CUBEHARM_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string text;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) text.append(buf, got);
  const int status = pclose(pipe);
  code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return text;
}

}  // namespace

TEST(Cli, CoeffAllRoutes) {
  const Result r = run_cli({"coeff", "--n", "2", "--m", "1", "--k", "1", "--route", "all", "--format", "json"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(doc.at("agree").get<bool>());
  EXPECT_EQ(doc.at("values").size(), kAllRoutes.size());
  for (const auto& [route, value] : doc.at("values").items()) EXPECT_EQ(value, "2") << route;
}

TEST(Cli, CoeffTextMarksDecimal) {
  const Result r = run_cli({"coeff", "--n", "3", "--m", "2", "--k", "1", "--route", "young"});
  ASSERT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("28/3"), std::string::npos);
  EXPECT_NE(r.out.find("≈"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({"coeff", "--n", "1", "--m", "2", "--k", "0"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"coeff", "--n", "2", "--m", "1"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"coeff", "--n", "2", "--m", "1", "--k", "1", "--route", "bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"table", "--n", "9"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"gen", "--m", "3", "--n", "2"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"verify", "dimension", "--n", "4"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"verify", "identities", "--order", "5"}).code, cli::kExitUsage);
}

TEST(Cli, VerifyIdentities) {
  const Result r = run_cli({"verify", "identities", "--order", "16"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.out;
  for (const char* name : {"g-series", "log-series", "pde", "tanh"}) EXPECT_NE(r.out.find(name), std::string::npos);
  EXPECT_NE(r.out.find("\"summary\""), std::string::npos);
}

TEST(Cli, VerifyHarmonics) {
  EXPECT_EQ(run_cli({"verify", "dimension", "--n", "3"}).code, cli::kExitOk);
  EXPECT_EQ(run_cli({"verify", "annihilation", "--n", "3"}).code, cli::kExitOk);
  EXPECT_EQ(run_cli({"verify", "mvp", "--n", "2", "--k", "1", "--delta"}).code, cli::kExitOk);
}

TEST(Cli, VerifyMvpFailureFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "cubeharm_x1sq.json";
  {
    std::ofstream f(path);
    f << R"([[[2,0],"1"]])";
  }
  const Result r = run_cli({"verify", "mvp", "--n", "2", "--k", "1", "--f", path.string()});
  EXPECT_EQ(r.code, cli::kExitVerifyFailed);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, TableJson) {
  const Result r = run_cli({"table", "--n", "2", "--format", "json"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  const auto& recs = doc.at("coefficients");
  ASSERT_EQ(recs.size(), 8U);
  bool found = false;
  for (const auto& rec : recs) {
    EXPECT_FALSE(rec.at("routesAgreeing").empty());
    if (rec.at("n") == 2 && rec.at("m") == 1 && rec.at("k") == 0) {
      EXPECT_EQ(rec.at("value"), "1");
      found = true;
    }
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(doc.at("generating").size(), 2U);
}

TEST(Cli, TableValueAndCsv) {
  const Result json = run_cli({"table", "--n", "3", "--format", "json"});
  ASSERT_EQ(json.code, cli::kExitOk);
  const auto doc = nlohmann::json::parse(json.out);
  bool found = false;
  for (const auto& rec : doc.at("coefficients")) {
    if (rec.at("n") == 3 && rec.at("m") == 2 && rec.at("k") == 1) {
      EXPECT_EQ(rec.at("value"), "28/3");
      found = true;
    }
  }
  EXPECT_TRUE(found);
  const Result csv = run_cli({"table", "--n", "2", "--format", "csv"});
  ASSERT_EQ(csv.code, cli::kExitOk);
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "n,m,k,value,routesAgreeing");
  EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 9);
}

TEST(Cli, Deterministic) {
  const Result a = run_cli({"table", "--n", "3", "--format", "json"});
  const Result b = run_cli({"table", "--n", "3", "--format", "json"});
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, OutFile) {
  const auto path = std::filesystem::temp_directory_path() / "cubeharm_bern.csv";
  const Result r = run_cli({"bernoulli", "--count", "3", "--format", "csv", "--out", path.string()});
  ASSERT_EQ(r.code, cli::kExitOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::stringstream text;
  text << f.rdbuf();
  EXPECT_NE(text.str().find("1/945"), std::string::npos);
  EXPECT_NE(text.str().find("1/42"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, GenAndInvariant) {
  const Result g = run_cli({"gen", "--m", "2", "--what", "F"});
  ASSERT_EQ(g.code, cli::kExitOk);
  EXPECT_NE(g.out.find("1/9*t^2"), std::string::npos);
  const Result inv = run_cli({"invariant", "--n", "3", "--m", "2", "--k", "1"});
  ASSERT_EQ(inv.code, cli::kExitOk);
  EXPECT_NE(inv.out.find("28/3"), std::string::npos);
  const Result delta = run_cli({"invariant", "--n", "2", "--what", "delta", "--format", "json"});
  ASSERT_EQ(delta.code, cli::kExitOk);
  EXPECT_EQ(nlohmann::json::parse(delta.out), nlohmann::json::parse(R"([[[3,1],"1"],[[1,3],"-1"]])"));
}

TEST(Cli, BinaryExitCodes) {
  int code = -1;
  const std::string out = run_binary("coeff --n 2 --m 1 --k 1 --route all --format csv", code);
  EXPECT_EQ(code, 0);
  EXPECT_NE(out.find("matrix,2"), std::string::npos);
  run_binary("coeff --n 1 --m 2 --k 0", code);
  EXPECT_EQ(code, 2);
  run_binary("verify identities --order 16", code);
  EXPECT_EQ(code, 0);
}
