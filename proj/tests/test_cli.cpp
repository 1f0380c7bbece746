#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const fs::path kConfigDir = CFP_CONFIG_DIR;
const fs::path kDataDir = fs::path(CFP_CONFIG_DIR).parent_path() / "tests" / "data";

struct Run {
  int code;
  std::string out;
};

Run run_cli(const std::string& args) {
  const fs::path out = fs::temp_directory_path() /
                       ("cfp_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                        ::testing::UnitTest::GetInstance()->current_test_info()->name() + ".out");
  const std::string cmd = std::string("\"") + CFP_CLI_PATH + "\" " + args + " > \"" + out.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  fs::remove(out);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string config(const std::string& name) { return "--config \"" + (kConfigDir / name).string() + "\""; }

TEST(Cli, VerifyScalarDemoPasses) {
  const auto r = run_cli("verify " + config("scalar_demo.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["command"], "verify");
  EXPECT_TRUE(j["all_pass"].get<bool>());
  EXPECT_TRUE(j["conditions"]["sampled_not_proven"].get<bool>());
  EXPECT_TRUE(j.contains("wall_time_seconds"));
  EXPECT_EQ(j["config"]["n"], 1);
}

TEST(Cli, VerifyLargeAlphaViolates) {
  const auto r = run_cli("verify " + config("scalar_alpha2.json"));
  ASSERT_EQ(r.code, 2) << r.out;
  const auto j = json::parse(r.out);
  EXPECT_FALSE(j["conditions"]["condition_iii"]["pass"].get<bool>());
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run_cli("verify --config \"" + (kDataDir / "bad_dims.json").string() + "\"").code, 1);
  EXPECT_EQ(run_cli("verify --config \"" + (kDataDir / "bad_syntax.json").string() + "\"").code, 1);
  EXPECT_EQ(run_cli("verify --config /nonexistent/config.json").code, 1);
  EXPECT_EQ(run_cli("verify").code, 1);
  EXPECT_EQ(run_cli("frobnicate").code, 1);
  EXPECT_EQ(run_cli("solve " + config("scalar_demo.json") + " --tol -1").code, 1);
  EXPECT_EQ(run_cli("example-linf --max-index 7").code, 1);
}

TEST(Cli, InputErrorNamesField) {
  const auto r = run_cli("verify --config \"" + (kDataDir / "bad_dims.json").string() + "\"");
  EXPECT_NE(r.out.find("equations[0].A[0]: expected 2x2 matrix"), std::string::npos) << r.out;
}

TEST(Cli, SolveQuarter) {
  const auto r = run_cli("solve " + config("matrix_quarter.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = json::parse(r.out);
  const auto& s = j["solve"];
  EXPECT_EQ(s["verdict"], "converged");
  EXPECT_NEAR(s["solution"][0][0][0].get<double>(), 4.0 / 3.0, 1e-10);
  EXPECT_NEAR(s["solution"][1][1][0].get<double>(), 4.0 / 3.0, 1e-10);
  EXPECT_LE(s["residual_1"].get<double>(), 1e-10);
  EXPECT_TRUE(s["positive_definite"].get<bool>());
}

TEST(Cli, SolveScalarHalf) {
  const auto r = run_cli("solve " + config("scalar_half.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NEAR(json::parse(r.out)["solve"]["solution"][0][0][0].get<double>(), 2.0, 1e-10);
}

TEST(Cli, SolveZeroMapReturnsQ) {
  const auto r = run_cli("solve " + config("zero_map_2x2.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = json::parse(r.out);
  EXPECT_LE(j["solve"]["iterations"].get<int>(), 2);
  EXPECT_EQ(j["solve"]["solution"], j["config"]["equations"][0]["Q"]);
}

TEST(Cli, SolveNonConvergenceExitsThree) {
  const auto r = run_cli("solve " + config("matrix_quarter.json") + " --max-iter 3");
  ASSERT_EQ(r.code, 3) << r.out;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["solve"]["verdict"], "max_iterations");
  EXPECT_TRUE(j["solve"]["solution"].is_null());
  EXPECT_FALSE(j["solve"]["best_iterate"].is_null());
}

TEST(Cli, ExampleLinfDefault) {
  const auto r = run_cli("example-linf");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["max_index"], 50);
  EXPECT_TRUE(j["certificate"]["holds"].get<bool>());
  EXPECT_EQ(j["certificate"]["pairs"], 45 * 45);
  EXPECT_EQ(j["limit"], "e0");
}

TEST(Cli, ExampleLinfSmall) {
  const auto r = run_cli("example-linf --max-index 8");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(json::parse(r.out)["certificate"]["pairs"], 9);
}

TEST(Cli, ExampleLinfFault) {
  const auto r = run_cli("example-linf --inject-fault");
  ASSERT_EQ(r.code, 2) << r.out;
  const auto j = json::parse(r.out);
  EXPECT_FALSE(j["certificate"]["violations"].empty());
}

TEST(Cli, OutFlagWritesFile) {
  const fs::path path = fs::temp_directory_path() / "cfp_cli_out_flag.json";
  fs::remove(path);
  const auto r = run_cli("verify " + config("scalar_demo.json") + " --out \"" + path.string() + "\"");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  json j;
  EXPECT_NO_THROW(in >> j);
  EXPECT_EQ(j["command"], "verify");
  fs::remove(path);
}

TEST(Cli, ReportsAreReproducible) {
  auto strip = [](const std::string& text) {
    auto j = json::parse(text);
    j.erase("wall_time_seconds");
    return j.dump();
  };
  const auto a = run_cli("solve " + config("conditions_pd.json") + " --seed 7");
  const auto b = run_cli("solve " + config("conditions_pd.json") + " --seed 7");
  EXPECT_EQ(a.code, b.code);
  EXPECT_EQ(strip(a.out), strip(b.out));
  const auto c = run_cli("solve " + config("conditions_pd.json") + " --seed 8");
  EXPECT_NE(strip(a.out), strip(c.out));
}

TEST(Cli, Version) {
  const auto r = run_cli("--version");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("0.1.0"), std::string::npos);
}

}  // namespace
