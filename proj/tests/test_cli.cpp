#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef POSETHOM_CLI
#error "POSETHOM_CLI must name the command-line binary"
#endif

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(POSETHOM_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST(Cli, GenCycle) {
  const auto r = run("gen cycle:5");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"m\":5,\"facets\":[[1,2],[2,3],[3,4],[4,5],[1,5]]}\n");
  const auto pts = nlohmann::json::parse(run("gen skeleton:4,0").out);
  EXPECT_EQ(pts["facets"], nlohmann::json::parse("[[1],[2],[3],[4]]"));
  EXPECT_EQ(run("gen random:6,1,0.4,seed=7").out, run("gen random:6,1,0.4,seed=7").out);
  EXPECT_EQ(run("gen torus:3").code, 2);
}

TEST(Cli, GenOutputRoundTrips) {
  const auto path = temp_file("k.json", run("gen random:7,2,0.5,seed=3").out);
  const auto a = run("compute --input " + path + " --theory uber --coeffs Z --format json");
  const auto b = run("compute --gen random:7,2,0.5,seed=3 --theory uber --coeffs Z --format json");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ComputeUberCycle) {
  const auto r = run("compute --gen cycle:4 --theory uber --coeffs Z --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const auto& e : j["entries"])
    if (e["q"] == 0 && e["l"] == 1) { EXPECT_EQ(e["free_rank"], 0); }
  EXPECT_NE(run("compute --gen cycle:4 --theory uber --coeffs Z").out.find("uber over Z"), std::string::npos);
}

TEST(Cli, ComputeDoubleHomologyBidegrees) {
  const auto r = run("compute --gen cycle:3 --theory dh --coeffs Q --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  bool found = false;
  for (const auto& e : j["entries"])
    if (e["bidegree"] == nlohmann::json::parse("[0,0]")) {
      EXPECT_EQ(e["free_rank"], 1);
      found = true;
    }
  EXPECT_TRUE(found);
}

TEST(Cli, ComputePosetFunctors) {
  const auto face = nlohmann::json::parse(run("compute --gen cycle:3 --functor face --format json").out);
  EXPECT_TRUE(face["entries"][0]["q"].is_null());
  EXPECT_EQ(face["entries"][2]["free_rank"], 1);
  EXPECT_EQ(face["functor"], "face");
  EXPECT_EQ(run("compute --gen cycle:3 --functor A").code, 0);
  EXPECT_EQ(run("compute --gen cycle:3 --functor nope").code, 2);
}

TEST(Cli, ErrorCodes) {
  const auto bad = temp_file("bad.json", "{\"m\": 3, \"facets\": [[1,2]");
  EXPECT_EQ(run("compute --input " + bad + " --theory dh").code, 2);
  EXPECT_EQ(run("compute --gen cycle:4 --theory dh --coeffs Z --q-range 1").code, 3);
  EXPECT_EQ(run("compute --gen cycle:4 --theory dh --coeffs Fp:4").code, 2);
  EXPECT_EQ(run("compute --theory dh").code, 2);
  EXPECT_EQ(run("compute --gen cycle:4 --gen cycle:5").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("verify B --gen cycle:4 --coeffs Z").code, 3);
}

TEST(Cli, VerifyCommands) {
  const auto b = run("verify B --gen cycle:7");
  EXPECT_EQ(b.code, 0);
  EXPECT_NE(b.out.find("x^-1 + y^2"), std::string::npos);
  EXPECT_EQ(run("verify A --corpus all-complexes:4").code, 0);
  EXPECT_EQ(run("verify oracle-2.8 --gen simplex:3").code, 0);
  EXPECT_EQ(run("verify cor-2.16").code, 0);
  EXPECT_EQ(run("verify lemma-2.13 --gen cycle:6 --format json").code, 0);
  const auto j = nlohmann::json::parse(run("verify lemma-2.11 --corpus all-complexes:3 --format json").out);
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["results"].size(), 5u);
}

TEST(Cli, ThreadCountDoesNotChangeOutput) {
  const std::string args = "compute --gen random:8,2,0.4,seed=11 --theory dh --coeffs Q --format json";
  const auto one = run(args + " --threads 1").out;
  EXPECT_EQ(run(args + " --threads 3").out, one);
  setenv("POSET_HOM_THREADS", "2", 1);
  EXPECT_EQ(run(args).out, one);
  unsetenv("POSET_HOM_THREADS");
}
