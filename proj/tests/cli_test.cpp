#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#ifndef SADI_CLI_PATH
#error "SADI_CLI_PATH must name the sadi binary"
#endif

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result sadi(const std::string& args) {
  const std::string cmd = std::string(SADI_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_path(const std::string& name) {
  return ::testing::TempDir() + "sadi_cli_" + name + ".json";
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream f(path);
  return nlohmann::json::parse(f);
}

}  // namespace

TEST(Cli, ClassifyExitCodes) {
  const auto ok = sadi("classify 2,3,4");
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(nlohmann::json::parse(ok.out).at("solver"), "ThreeAgentSpread");
  const auto none = sadi("classify 1,1,1");
  EXPECT_EQ(none.code, 2);
  EXPECT_EQ(nlohmann::json::parse(none.out).at("solver"), "Unsolvable");
  EXPECT_EQ(sadi("classify 2,x").code, 3);
  EXPECT_EQ(sadi("nonsense").code, 3);
}

TEST(Cli, SolveNamesTheProtocol) {
  const auto r = sadi("solve 3,3,1");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out).at("protocol"), "Fano331");
}

TEST(Cli, RunThenVerifyTrace) {
  const auto trace = temp_path("trace");
  ASSERT_EQ(sadi("run 2,3,4 --deal \"1,2|3,4,5|6,7,8,9\" --seed 3 -o " + trace).code, 0);
  const auto t = read_json(trace);
  EXPECT_EQ(t.at("schema"), "sadi-trace/1");
  EXPECT_EQ(t.at("deck"), "1,2,3,4,5,6,7,8,9");
  EXPECT_EQ(t.at("certified_diffusion").size(), 3u);
  const auto v = sadi("verify --trace " + trace + " --props I,S,k=3");
  EXPECT_EQ(v.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(v.out).at("all_hold").get<bool>());

  auto bad = t;
  bad["run"].erase(bad["run"].begin());
  const auto tampered = temp_path("tampered");
  std::ofstream(tampered) << bad.dump();
  const auto f = sadi("verify --trace " + tampered + " --props I,S");
  EXPECT_EQ(f.code, 1);
  EXPECT_EQ(nlohmann::json::parse(f.out).at("verdicts").at("execution"), "fail");
}

TEST(Cli, RunReportsReductionPhases) {
  const auto r = sadi("run 6,7,1 --seed 5");
  ASSERT_EQ(r.code, 0);
  const auto t = nlohmann::json::parse(r.out);
  ASSERT_TRUE(t.contains("phases"));
  EXPECT_EQ(t.at("phases").size(), t.at("run").size());
  const std::string first = t.at("phases").front();
  EXPECT_TRUE(first == "rho0" || first == "rho1") << first;
  EXPECT_EQ(t.at("phases").back(), "End");
}

TEST(Cli, VerifyType) {
  const auto r = sadi("verify --type 3,3,1 --props I,S,SS,k=7");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out).at("coverage"), "all branches of all deals");
  EXPECT_EQ(sadi("verify --type 2,3,4 --props Q").code, 3);
  EXPECT_EQ(sadi("verify --props I").code, 3);
}

TEST(Cli, Bounds) {
  const auto r = sadi("bounds 300 7 3 500");
  ASSERT_EQ(r.code, 0);
  const auto p = nlohmann::json::parse(r.out).at("point");
  EXPECT_EQ(p.at("d"), "900/29");
  EXPECT_TRUE(p.at("bound1").at("holds").get<bool>());
  EXPECT_EQ(sadi("bounds 10 7 3 500").code, 3);
  EXPECT_EQ(sadi("bounds --sweep --m-max 3 --k-max 9 --n-max 90").code, 0);
}
