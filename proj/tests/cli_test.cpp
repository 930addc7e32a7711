#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + GRR_CLI_PATH + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const std::string kC7Set = "--set '(1,2,3,4,5,6,7);(1,7,6,5,4,3,2);(1,3,5,7,2,4,6);(1,6,4,2,7,5,3)'";

TEST(Cli, CertifyWithExhaustiveCheck) {
  const auto r = run("certify --group A7 --x '(1,2,3,4,5,6,7)' --y '(1,2)(3,4)' --k 5 --exhaustive --json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["command"], "certify");
  EXPECT_EQ(j["results"]["group_order"], 2520);
  EXPECT_TRUE(j["results"]["exhaustive"]["agrees"].get<bool>());
  EXPECT_TRUE(j.contains("timings"));
  EXPECT_TRUE(j.contains("version"));
}

TEST(Cli, CertifyRejectsSmallK) {
  EXPECT_EQ(run("certify --group A7 --x '(1,2,3,4,5,6,7)' --y '(1,2)(3,4)' --k 4").code, 2);
}

TEST(Cli, CertifyReportsFailedHypotheses) {
  // y commutes with x: yxy = x lies in <x>.
  const auto r = run("certify --group '(1,2,3,4,5,6,7)(8,9)' --x '(1,2,3,4,5,6,7)' --y '(8,9)' --k 5 --json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["results"]["verdict"], "hypotheses_failed");
  EXPECT_FALSE(j["results"]["checks"]["yxy_outside_cyclic"].get<bool>());
}

TEST(Cli, ParseAndLimitExitCodes) {
  EXPECT_EQ(run("certify --group A7 --x '(1,2,3' --y '(1,2)(3,4)' --k 5").code, 2);
  EXPECT_EQ(run("certify --group A7 --x '(1,2)' --y '(1,2)(3,4)' --k 5").code, 2);
  EXPECT_EQ(run("certify --group A11 --x '(1,2,3,4,5,6,7,8,9,10,11)' --y '(1,2)(3,4)' --k 5").code, 3);
  EXPECT_EQ(run("certify --group A7 --x '(1,2,3,4,5,6,7)' --y '(1,2)(3,4)' --k 5 --exhaustive",
                "GRR_NODE_BUDGET=2")
                .code,
            3);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST(Cli, ConstructAn) {
  auto r = run("construct-an --n 14 --json");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["results"]["p"], 11);
  EXPECT_EQ(j["results"]["y"], "(2,13)(3,14)(9,10)(11,12)");
  ASSERT_FALSE(j["results"]["certificates"].empty());
  for (const auto& c : j["results"]["certificates"]) EXPECT_EQ(c["aut_gs_order"], 1);
  EXPECT_EQ(run("construct-an --n 13").code, 2);
  r = run("construct-an --n 30 --k 5..9 --json");
  ASSERT_EQ(r.code, 0);
  j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["results"]["certificates"].size(), 5u);
  for (const auto& c : j["results"]["certificates"]) EXPECT_EQ(c["aut_gs_order"], 1);
}

TEST(Cli, ExportFormats) {
  const std::string path = testing::TempDir() + "c7.g6";
  ASSERT_EQ(run("export --group C7 " + kC7Set + " --format graph6 --out " + path).code, 0);
  std::ifstream in(path, std::ios::binary);
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  ASSERT_FALSE(bytes.empty());
  EXPECT_EQ(bytes.front(), 'F');
  EXPECT_EQ(bytes.size(), 6u);  // 'F', four data bytes, newline
  const auto d = run("export --group C7 " + kC7Set + " --format dimacs");
  EXPECT_EQ(d.code, 0);
  EXPECT_EQ(d.out.substr(0, d.out.find('\n')), "p edge 7 14");
  EXPECT_EQ(run("export --group C7 " + kC7Set + " --format gml").code, 2);
}

TEST(Cli, Census) {
  const std::string path = testing::TempDir() + "census.txt";
  {
    std::ofstream f(path);
    f << "# test\nA7 | A7 | (1,2,3,4,5,6,7) | (1,2)(3,4)\nodd | C7 | (1,2,3,4,5,6,7) |\n"
      << "broken | A7 | (1,2,3 | (1,2)(3,4)\n";
  }
  const auto r = run("census --file " + path + " --json --exhaustive --jobs 2");
  ASSERT_EQ(r.code, 0);
  const auto rows = nlohmann::json::parse(r.out)["results"]["rows"];
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0]["status"], "ok");
  EXPECT_TRUE(rows[0]["exhaustive"]["agrees"].get<bool>());
  EXPECT_EQ(rows[1]["status"], "no_involution");
  EXPECT_EQ(rows[2]["status"], "error");

  const std::string empty = testing::TempDir() + "empty.txt";
  std::ofstream(empty).close();
  const auto e = run("census --file " + empty + " --json");
  EXPECT_EQ(e.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(e.out)["results"]["rows"].empty());
}

TEST(Cli, ResultsAreReproducible) {
  const std::string args = "sample --group A5 --x '(1,2,3,4,5)' --trials 300 --seed 4 --json";
  const auto a = nlohmann::json::parse(run(args).out);
  const auto b = nlohmann::json::parse(run(args).out);
  EXPECT_EQ(a["results"].dump(), b["results"].dump());
}

}  // namespace
