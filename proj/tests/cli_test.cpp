#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(ALEXPOLY_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = testing::TempDir() + name;
  std::ofstream(path) << content;
  return path;
}

void expect_schema(const nlohmann::json& j) {
  ASSERT_TRUE(j.is_object());
  EXPECT_TRUE(j.at("input").is_string());
  EXPECT_TRUE(j.at("closure").is_string());
  EXPECT_TRUE(j.at("components").is_number_integer());
  EXPECT_TRUE(j.at("agree").is_boolean());
  ASSERT_TRUE(j.at("method_results").is_object());
  for (const auto& [name, value] : j.at("method_results").items()) {
    EXPECT_TRUE(name == "engine" || name == "closed-form" || name == "fox" || name == "q-matrix") << name;
    EXPECT_TRUE(value.is_string());
  }
}

}  // namespace

TEST(Cli, ComputeText) {
  Result r = run("compute 'D([[2],[-2]]*[2]*([1/3]+[1/2]))'");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "t^6 - 3*t^5 + 7*t^4 - 9*t^3 + 7*t^2 - 3*t + 1\n");
  r = run("compute 'D([1])'");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1\n");
}

TEST(Cli, ComputeAllJsonSchema) {
  const Result r = run("compute --method all --json 'D([3]*[3]*[-2])'");
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  expect_schema(j);
  EXPECT_EQ(j["components"], 1);
  EXPECT_TRUE(j["agree"].get<bool>());
  EXPECT_EQ(j["method_results"].size(), 4u);
  EXPECT_EQ(j["method_results"]["fox"], "t^6 - t^5 + t^3 - t + 1");
}

TEST(Cli, OptionsAndErrors) {
  EXPECT_EQ(run("compute --no-fastpath 'N([5/2])'").out, "t^2 - 3*t + 1\n");
  EXPECT_EQ(run("compute --orient bits=-1,1 'D([1/2])'").code, 0);
  EXPECT_EQ(run("compute --orient preset=2comp --method all 'D([1]*[1]*[1]*[1])'").code, 0);
  EXPECT_EQ(run("compute 'D([1/'").code, 1);
  EXPECT_EQ(run("compute --method closed-form 'D([1/3])'").code, 1);
  EXPECT_EQ(run("compute --orient sideways 'D([1])'").code, 1);
  EXPECT_EQ(run("compute --method guess 'D([1])'").code, 1);
  EXPECT_EQ(run("").code, 1);
}

TEST(Cli, PretzelAndMontesinos) {
  Result r = run("pretzel 1,1,1");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("knot-odd"), std::string::npos);
  EXPECT_NE(r.out.find("t^2 - t + 1"), std::string::npos);
  r = run("pretzel 2,2,2 --json");
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  expect_schema(j);
  EXPECT_EQ(j["components"], 3);
  r = run("montesinos 1/2,1/3,1/7");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("2-comp"), std::string::npos);
  EXPECT_EQ(run("pretzel 1,1").code, 1);
  EXPECT_EQ(run("montesinos 2/4,1/3,1/5").code, 1);
}

TEST(Cli, PdRoundTrip) {
  Result r = run("pd 'D([1])'");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("X[", 0), 0u);
  r = run("pd 'D([[2],[-2]]*[2]*([1/3]+[1/2]))'");
  const std::string path = temp_file("q.pd", r.out);
  r = run("compute --method all --json --from-pd " + path);
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  expect_schema(j);
  EXPECT_EQ(j["method_results"]["fox"], "t^6 - 3*t^5 + 7*t^4 - 9*t^3 + 7*t^2 - 3*t + 1");
  EXPECT_EQ(run("compute --from-pd " + path).code, 1);
}

TEST(Cli, Corpus) {
  EXPECT_EQ(run(std::string("corpus ") + ALEXPOLY_CORPUS).code, 0);
  Result r = run("corpus " + temp_file("empty.txt", "# nothing\n"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("0 entries"), std::string::npos);
  r = run("corpus " + temp_file("wrong.txt", "wrong-trefoil | D([1/3]) | t^2 + 1 | derived\n"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("wrong-trefoil"), std::string::npos);
  EXPECT_EQ(run("corpus " + temp_file("bad.txt", "only | two\n")).code, 1);
}
