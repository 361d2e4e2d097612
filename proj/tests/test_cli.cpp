#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"

using namespace pgl3glue;
using namespace testing_helpers;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out, err;
};

fs::path scratchDir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / ("pgl3glue-cli-" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

CliRun run(const std::string& args) {
  const fs::path errFile = scratchDir() / "stderr.txt";
  const std::string cmd = std::string(PGL3GLUE_CLI) + " " + args + " 2>" + errFile.string();
  CliRun r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = readFile(errFile.string());
  return r;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratchDir() / name;
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST(Cli, ValidateSister) {
  const CliRun r = run("validate");
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = parseJson(r.out);
  EXPECT_EQ(j["version"], std::string(kVersion));
  EXPECT_EQ(j["nu"], 2);
  EXPECT_EQ(j["edges"], 2);
  EXPECT_EQ(j["cusps"], 1);
}

TEST(Cli, LatticeReportPasses) {
  const CliRun r = run("lattice-report");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(parseJson(r.out)["pass"].get<bool>());
}

TEST(Cli, CensusVerify) {
  const CliRun r = run("--jobs 2 census sister --verify");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(parseJson(r.out)["pass"].get<bool>());
}

TEST(Cli, InputErrorsExitTwo) {
  CliRun r = run("analyze --point /nonexistent/missing.json");
  EXPECT_EQ(r.code, 2);
  const Json e = parseJson(r.err);
  EXPECT_EQ(e["error"]["type"], "input");
  EXPECT_NE(e["error"]["message"].get<std::string>().find("cannot open file"), std::string::npos);

  EXPECT_EQ(run("validate --no-such-flag").code, 2);
  EXPECT_EQ(run("census other").code, 2);
  EXPECT_EQ(run("--rank-tol -1 validate").code, 2);
  EXPECT_EQ(run("validate " + write("bad.json", "{\"name\": \"x\",\n \"tetrahedra\": 1,\n oops}")).code, 2);
}

TEST(Cli, NonSolutionExitsOne) {
  ReducedPoint p = constantPoint(2, kOmegaPlus);
  p.x[0] += 0.01;
  const CliRun r = run("analyze --point " + write("off.json", writeJson({{"reduced", reducedToJson(p)}})));
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(parseJson(r.err)["error"]["type"], "computation");
}

TEST(Cli, OutputIsByteIdentical) {
  const std::string point = write("omega.json", writeJson({{"reduced", reducedToJson(constantPoint(2, kOmegaPlus))}}));
  const CliRun a = run("analyze --point " + point), b = run("analyze --point " + point);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const CliRun c = run("--seed 4 solve --starts 30"), d = run("--seed 4 --jobs 2 solve --starts 30");
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(c.out, d.out);
}

TEST(Cli, SolveThenAnalyzeRoundTrip) {
  const CliRun s = run("solve --start P-root-2");
  ASSERT_EQ(s.code, 0) << s.err;
  const Json sj = parseJson(s.out);
  EXPECT_TRUE(sj["newton"]["converged"].get<bool>());
  const std::string solved = write("solved.json", s.out);
  const CliRun a = run("analyze --point " + solved);
  ASSERT_EQ(a.code, 0) << a.err;
  const Json aj = parseJson(a.out);
  EXPECT_TRUE(aj["report"]["unipotent"].get<bool>());
  // The analyze output is itself a valid point file.
  const CliRun again = run("analyze --point " + write("again.json", a.out));
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_EQ(parseJson(again.out)["report"], aj["report"]);
}

TEST(Cli, TargetFileSolve) {
  const std::string target = write("target.json", R"({"cusps": [{"A": [1.01, 0], "Astar": 1}]})");
  const std::string start = write("start.json", writeJson({{"reduced", reducedToJson(constantPoint(2, kOmegaPlus))}}));
  const CliRun r = run("solve --target-file " + target + " --start " + start);
  ASSERT_EQ(r.code, 0) << r.err;
  const CliRun h = run("holonomy --point " + write("t.json", r.out));
  ASSERT_EQ(h.code, 0) << h.err;
  const Json A = parseJson(h.out)["cusps"][0]["A"];
  EXPECT_NEAR(A[0].get<double>(), 1.01, 1e-10);
  EXPECT_NEAR(A[1].get<double>(), 0.0, 1e-10);
  EXPECT_EQ(run("solve --target unipotent --target-file " + target).code, 2);
}

TEST(Cli, PrettyRendering) {
  const CliRun r = run("--pretty validate");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("nu: 2"), std::string::npos) << r.out;
}
