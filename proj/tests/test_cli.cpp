#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

struct Result {
  std::string out;
  int code = -1;
};

Result tool(const std::string& args) {
  const std::string cmd = std::string(FREEDYN_TOOL) + " " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(FREEDYN_DATA_DIR) + "/" + name; }

nlohmann::json json_of(const std::string& args) {
  const Result r = tool(args + " --json");
  return nlohmann::json::parse(r.out);
}

}  // namespace

TEST(Cli, AnalyzeThueMorse) {
  const Result r = tool("analyze -f " + data("tm.endo"));
  EXPECT_EQ(r.code, 0) << r.out;
  const auto j = json_of("analyze -f " + data("tm.endo"));
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["command"], "analyze");
  EXPECT_EQ(j["exit_code"], 0);
  const auto& res = j["results"];
  EXPECT_TRUE(res["injective"].get<bool>());
  EXPECT_FALSE(res["surjective"].get<bool>());
  EXPECT_TRUE(res["immersion"].get<bool>());
  EXPECT_EQ(res["expansiveness"]["verdict"], "ExpansiveLikely");
  EXPECT_TRUE(res["representative"]["primitive"].get<bool>());
  EXPECT_NEAR(res["representative"]["lambda"].get<double>(), 2.0, 1e-9);
  EXPECT_TRUE(j.contains("timing"));
}

TEST(Cli, AnalyzeVerdicts) {
  const auto fib = json_of("analyze -f " + data("fib.endo"));
  EXPECT_TRUE(fib["results"]["surjective"].get<bool>());
  EXPECT_FALSE(fib["results"]["immersion"].get<bool>());
  EXPECT_EQ(fib["results"]["expansiveness"]["verdict"], "Surjective");
  const auto ex = json_of("analyze -f " + data("ex.endo"));
  EXPECT_EQ(ex["results"]["expansiveness"]["verdict"], "NotExpansive");
}

TEST(Cli, Rays) {
  const Result r = tool("rays -f " + data("tm.endo"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("X1: abbabaab..."), std::string::npos);
  EXPECT_NE(r.out.find("X2: baababba..."), std::string::npos);
  EXPECT_EQ(r.out.find("X3:"), std::string::npos);
  EXPECT_NE(r.out.find("# attraction: pass"), std::string::npos);
}

TEST(Cli, Admissible) {
  const Result r = tool("admissible -f " + data("ex.endo") + " --splitting collapse:a,b");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("NOT ADMISSIBLE"), std::string::npos);
  const Result t = tool("admissible -f " + data("ex.endo") + " --tree " + data("ex_split.tree"));
  EXPECT_NE(t.out.find("NOT ADMISSIBLE"), std::string::npos);
}

TEST(Cli, OrbitAndRigidity) {
  const Result o = tool("orbit -f " + data("tm.endo") + " --tree " + data("rose12.tree"));
  EXPECT_EQ(o.code, 0) << o.out;
  EXPECT_NE(o.out.find("converged: true"), std::string::npos);
  EXPECT_NE(o.out.find("k,distance\n0,"), std::string::npos);
  const Result r = tool("rigidity -f " + data("tm.endo") + " -k 6 --samples 100 --seed 42");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("C6 = 1.039"), std::string::npos);
}

TEST(Cli, ErrorExitCodes) {
  const Result bad = tool("analyze -f " + data("bad.endo"));
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("line 3"), std::string::npos);
  EXPECT_EQ(tool("analyze -f " + data("missing.endo")).code, 1);
  const Result pull = tool("orbit -f " + data("ex.endo") + " --tree " + data("ex_split.tree"));
  EXPECT_EQ(pull.code, 1);
  EXPECT_NE(pull.out.find("TrivialPullback"), std::string::npos);
  const auto j = json_of("orbit -f " + data("ex.endo") + " --tree " + data("ex_split.tree"));
  EXPECT_EQ(j["exit_code"], 1);
  EXPECT_EQ(j["error"]["code"], "TrivialPullback");
  EXPECT_EQ(tool("nosuchcommand").code, 1);
  EXPECT_EQ(tool("rays").code, 1);
}

TEST(Cli, DeterministicReports) {
  for (const std::string args : {"analyze -f " + data("aab.endo"), "rays -f " + data("tm.endo"),
                                 "rigidity -f " + data("tm.endo") + " -k 4 --samples 30",
                                 "orbit -f " + data("aab.endo") + " --tree " + data("rose12.tree")}) {
    auto a = json_of(args), b = json_of(args);
    a.erase("timing");
    b.erase("timing");
    EXPECT_EQ(a.dump(), b.dump()) << args;
    EXPECT_EQ(tool(args).out, tool(args).out) << args;
  }
}
