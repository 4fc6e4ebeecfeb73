#include "cli.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

using toricabel::cli::Exit;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "toricabel");
  std::ostringstream out, err;
  const int code = toricabel::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Cli, CheckReportsPredicates) {
  const Result r = run({"check", "--fan", "P2", "--bundle", "H", "--json"});
  ASSERT_EQ(r.code, Exit::kPass) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(doc["globally_generated"].get<bool>());
  EXPECT_TRUE(doc["very_ample"].get<bool>());
  EXPECT_EQ(doc["line_bundles"][0]["sections"], 3);
}

TEST(Cli, MissingBundleIsInputError) {
  EXPECT_EQ(run({"check", "--fan", "P2"}).code, Exit::kInputError);
  EXPECT_EQ(run({"check", "--fan", "P2", "--bundle", "Q"}).code, Exit::kInputError);
  EXPECT_EQ(run({"frobnicate"}).code, Exit::kInputError);
}

TEST(Cli, NonSmoothFanIsDegenerate) {
  const std::string path = write_temp(
      "cone_fan.json", R"({"n":2, "rays":[[1,0],[1,2],[-1,-1]], "max_cones":[[0,1],[1,2],[2,0]]})");
  const Result r = run({"check", "--fan", path, "--bundle", "[0,0,1]"});
  EXPECT_EQ(r.code, Exit::kDegenerate);
  EXPECT_NE(r.err.find("not smooth"), std::string::npos);
}

TEST(Cli, MalformedFanIsInputError) {
  const std::string path = write_temp("bad_fan.json", R"({"n":2, "rays":[[2,0],[0,1]], "max_cones":[[0,1]]})");
  EXPECT_EQ(run({"check", "--fan", path, "--bundle", "[1,1]"}).code, Exit::kInputError);
}

TEST(Cli, DecomposeAndIntersect) {
  Result r = run({"decompose", "--fan", "F2", "--bundle", "[0,1,0,1]", "--json"});
  ASSERT_EQ(r.code, Exit::kPass) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["entries"].size(), 2u);

  r = run({"mixvol", "--fan", "P1xP1", "--bundle", "(2,0)", "--tau", "2"});
  ASSERT_EQ(r.code, Exit::kPass) << r.err;
  EXPECT_NE(r.out.find(" 2"), std::string::npos);

  r = run({"resultant-degree", "--fan", "P2", "--bundle", "H,2H", "--cycle", "[[[0],1]]", "--json"});
  ASSERT_EQ(r.code, Exit::kPass) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["multidegree"], nlohmann::json::parse("[2,1]"));
}

TEST(Cli, InvertPasses) {
  const Result r = run({"invert", "--fan", "P2", "--bundle", "H", "--random", "3", "--seed", "2"});
  EXPECT_EQ(r.code, Exit::kPass) << r.out << r.err;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST(Cli, InvertJsonIsDeterministic) {
  const std::vector<std::string> args{"invert", "--fan", "P1xP1", "--bundle", "(1,1)",
                                      "--random", "(2,1)", "--seed", "8", "--json"};
  const Result a = run(args), b = run(args);
  ASSERT_EQ(a.code, Exit::kPass) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto doc = nlohmann::json::parse(a.out);
  EXPECT_EQ(doc["N"], doc["N_cycle"]);
  EXPECT_TRUE(doc["pass"].get<bool>());
}

TEST(Cli, InvertGivenCurve) {
  const Result r = run({"invert", "--fan", "P2", "--bundle", "H", "--curve",
                        R"({"terms": [[[0,1],1,0], [[2,0],-1,0], [[0,0],0.3,0.1]]})", "--form",
                        R"({"terms": [[[1,0],1,0]]})"});
  EXPECT_EQ(r.code, Exit::kPass) << r.out << r.err;
}

TEST(Cli, InvertErrors) {
  EXPECT_EQ(run({"invert", "--bundle", "H", "--random", "2", "--form-zero"}).code, Exit::kDegenerate);
  EXPECT_EQ(run({"invert", "--fan", "P1xP1", "--bundle", "(1,0)", "--random", "(1,1)"}).code,
            Exit::kDegenerate);
  EXPECT_EQ(run({"invert", "--bundle", "H"}).code, Exit::kInputError);
  EXPECT_EQ(run({"invert", "--bundle", "H", "--random", "2", "--curve", "{}"}).code, Exit::kInputError);
  EXPECT_EQ(run({"invert", "--bundle", "H,H", "--random", "2"}).code, Exit::kInputError);
}
