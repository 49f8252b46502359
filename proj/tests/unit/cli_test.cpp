#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "probcf_cli/cli.hpp"

namespace probcf {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out, err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "probcf");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("probcf_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(CliTest, RunWritesSamplesAndReport) {
  auto r = cli({"run", "coin(0.36)", "--budget", "50", "--seed", "1", "--out", path("s.csv"), "--report",
                path("r.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("mean 0.5"), std::string::npos) << r.out;
  EXPECT_EQ(slurp(path("s.csv")).rfind("weight,value,flow_id\n", 0), 0u);
  EXPECT_NE(slurp(path("r.json")).find("\"arms\""), std::string::npos);
  auto rep = cli({"report", path("r.json")});
  EXPECT_EQ(rep.code, 0);
  EXPECT_NE(rep.out.find("p_hat"), std::string::npos);
}

TEST_F(CliTest, RunIsByteDeterministic) {
  for (const char* tag : {"a", "b"}) {
    auto r = cli({"run", "obsLoop(3,5)", "--budget", "100", "--seed", "9", "--weight-mode", "per-arm", "--out",
                  path(std::string(tag) + ".csv"), "--report", path(std::string(tag) + ".json")});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
}

TEST_F(CliTest, ProgramFile) {
  {
    std::ofstream f(path("p.prob"));
    f << "double x ~ uniform(0, 20);\n// comment\nobserve(x < 5);\nreturn x;\n";
  }
  auto r = cli({"run", path("p.prob"), "--budget", "10", "--out", path("s.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto kl = cli({"kl", "--samples", path("s.csv"), "--ground-truth", path("s.csv")});
  ASSERT_EQ(kl.code, 0) << kl.err;
  EXPECT_NE(kl.out.find("kl 0\n"), std::string::npos) << kl.out;
}

TEST_F(CliTest, FlowsAndCdpg) {
  auto f = cli({"flows", "coin(0.36)", "--verdict"});
  ASSERT_EQ(f.code, 0);
  EXPECT_NE(f.out.find("blacklisted"), std::string::npos);
  auto c = cli({"cdpg", "condPropDemo", "--flow", "3"});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_NE(c.out.find("weight(0.15);"), std::string::npos) << c.out;
  EXPECT_NE(c.out.find("blacklisted: no"), std::string::npos);
  auto missing = cli({"cdpg", "coin(0.36)", "--flow", "9"});
  EXPECT_EQ(missing.code, 1);
}

TEST_F(CliTest, BaselineAndKl) {
  auto b = cli({"baseline", "coin(0.36)", "--method", "rejection", "--n", "20000", "--seed", "3", "--out",
                path("b.csv")});
  ASSERT_EQ(b.code, 0) << b.err;
  auto kl = cli({"kl", "--samples", path("b.csv"), "--ground-truth", "coin(0.36)"});
  ASSERT_EQ(kl.code, 0) << kl.err;
  auto s = cli({"baseline", "coin(0.36)", "--method", "smc", "--particles", "100", "--sweeps", "3"});
  EXPECT_EQ(s.code, 0) << s.err;
  EXPECT_NE(s.out.find("sweeps 3"), std::string::npos);
}

TEST_F(CliTest, Errors) {
  EXPECT_NE(cli({}).code, 0);
  EXPECT_NE(cli({"run", "nosuchprogram.prob"}).code, 0);
  EXPECT_NE(cli({"run", "coin(0.36)", "--weight-mode", "bogus"}).code, 0);
  {
    std::ofstream f(path("bad.prob"));
    f << "x := 1; return x;";
  }
  auto r = cli({"run", path("bad.prob")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST_F(CliTest, Source) {
  auto r = cli({"source", "unifCd(20)"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("observe(t >= 20);"), std::string::npos);
}

}  // namespace
}  // namespace probcf
