#include <gtest/gtest.h>

#include <filesystem>
#include <string>

#include "cfp/config.hpp"
#include "cfp/report.hpp"

namespace cfp {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const fs::path kConfigDir = CFP_CONFIG_DIR;
const fs::path kDataDir = fs::path(CFP_CONFIG_DIR).parent_path() / "tests" / "data";

json scalar_json() {
  return json::parse(R"({
    "n": 1,
    "equations": [
      {"Q": [[[1, 0]]], "sign": "plus", "A": [[[[1, 0]]]], "map": {"kind": "scaled_identity", "params": [0.5]}},
      {"Q": [[[1, 0]]], "sign": "plus", "A": [[[[1, 0]]]], "map": {"kind": "scaled_identity", "params": [0.5]}}
    ],
    "ball_radius": 4
  })");
}

std::string error_of(const json& j) {
  try {
    (void)parse_config(j);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(ParseConfig, MinimalWithDefaults) {
  const auto c = parse_config(scalar_json());
  EXPECT_EQ(c.n, 1u);
  EXPECT_EQ(c.ball_radius, 4.0);
  EXPECT_FALSE(c.k1.has_value());
  EXPECT_EQ(c.resolved_k1(), 2.0);
  EXPECT_EQ(c.alpha, 1e-6);
  EXPECT_EQ(c.tolerance, 1e-10);
  EXPECT_EQ(c.max_iterations, 10000u);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.samples, 200u);
  EXPECT_EQ(c.equations[1].map, MapDescriptor::scaled_identity(0.5));
}

TEST(ParseConfig, ExplicitK1AndComplexEntries) {
  auto j = scalar_json();
  j["k1"] = 0.75;
  j["n"] = 2;
  const json q = json::parse(R"([[[2, 0], [0, 0.5]], [[0, -0.5], [1, 0]]])");
  const json a = json::parse(R"([[[0.3, 0], [0.1, 0.2]], [[0, -0.1], [0.4, 0]]])");
  for (auto& eq : j["equations"]) {
    eq["Q"] = q;
    eq["A"] = json::array({a});
  }
  const auto c = parse_config(j);
  EXPECT_EQ(*c.k1, 0.75);
  EXPECT_EQ(c.equations[0].q(0, 1), Complex(0, 0.5));
  EXPECT_EQ(c.equations[0].a[0](0, 1), Complex(0.1, 0.2));
}

TEST(ParseConfig, FieldErrors) {
  auto j = scalar_json();
  j["n"] = 2;
  EXPECT_NE(error_of(j).find("equations[0].Q: expected 2x2 matrix"), std::string::npos) << error_of(j);

  j = scalar_json();
  j["equations"][1]["A"][0] = json::parse(R"([[[1, 0], [0, 0]], [[0, 0], [1, 0]]])");
  EXPECT_NE(error_of(j).find("equations[1].A[0]: expected 1x1 matrix"), std::string::npos) << error_of(j);

  j = scalar_json();
  j["equations"][0]["sign"] = "times";
  EXPECT_NE(error_of(j).find("equations[0].sign"), std::string::npos);

  j = scalar_json();
  j["equations"][0]["map"]["kind"] = "cubic";
  EXPECT_NE(error_of(j).find("unknown map kind 'cubic'"), std::string::npos);

  j = scalar_json();
  j["equations"][0]["map"]["params"] = json::array();
  EXPECT_NE(error_of(j).find("takes 1 parameter"), std::string::npos);

  j = scalar_json();
  j.erase("ball_radius");
  EXPECT_NE(error_of(j).find("missing field 'ball_radius'"), std::string::npos);

  j = scalar_json();
  j["k1"] = "sometimes";
  EXPECT_NE(error_of(j).find("k1"), std::string::npos);

  j = scalar_json();
  j["alpha"] = 0;
  EXPECT_NE(error_of(j).find("alpha: must be positive"), std::string::npos);

  j = scalar_json();
  j["equations"][0]["Q"] = json::parse("[[[-1, 0]]]");
  EXPECT_NE(error_of(j).find("positive definite"), std::string::npos);

  j = scalar_json();
  j["equations"][1]["A"][0] = json::parse("[[[2, 0]]]");
  EXPECT_NE(error_of(j).find("same coefficient list"), std::string::npos);

  j = scalar_json();
  j["equations"][0]["Q"] = json::parse("[[[1, 0.5]]]");
  EXPECT_NE(error_of(j).find("equations[0].Q"), std::string::npos);

  j = scalar_json();
  j["samples"] = -3;
  EXPECT_NE(error_of(j).find("samples"), std::string::npos);
}

TEST(ParseConfig, SpectralPowerNeedsExplicitK1) {
  auto j = scalar_json();
  for (auto& eq : j["equations"]) eq["map"] = {{"kind", "spectral_power"}, {"params", {1.0, 2.0}}};
  EXPECT_NE(error_of(j).find("give k1 explicitly"), std::string::npos);
  j["k1"] = 3.0;
  EXPECT_EQ(parse_config(j).resolved_k1(), 3.0);
}

TEST(ParseConfigText, SyntaxErrorReportsLine) {
  try {
    (void)parse_config_text("{\n  \"n\": 1,\n  \"equations\": [\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(LoadConfig, MissingFile) {
  EXPECT_THROW(load_config(kConfigDir / "does_not_exist.json"), ConfigError);
}

TEST(LoadConfig, BadDataFiles) {
  EXPECT_THROW(load_config(kDataDir / "bad_dims.json"), ConfigError);
  EXPECT_THROW(load_config(kDataDir / "bad_syntax.json"), ConfigError);
}

TEST(LoadConfig, BundledConfigsRoundTrip) {
  std::size_t seen = 0;
  for (const auto& entry : fs::directory_iterator(kConfigDir)) {
    if (entry.path().extension() != ".json") continue;
    ++seen;
    const auto c = load_config(entry.path());
    const auto again = parse_config(json::parse(to_json(c).dump()));
    EXPECT_EQ(again, c) << entry.path();
  }
  EXPECT_GE(seen, 6u);
}

TEST(Report, NonFiniteBecomesNull) {
  SolveReport r;
  r.best_iterate = HermitianMatrix::identity(1);
  r.residual_1 = std::numeric_limits<double>::infinity();
  r.residual_2 = std::nan("");
  const auto j = to_json(r);
  EXPECT_TRUE(j["residual_1"].is_null());
  EXPECT_TRUE(j["residual_2"].is_null());
  EXPECT_TRUE(j["solution"].is_null());
  EXPECT_NO_THROW((void)json::parse(j.dump()));
}

TEST(Report, DoublesRoundTripExactly) {
  const double v = 0.1 + 0.2;
  const json j = {{"x", v}};
  EXPECT_EQ(json::parse(j.dump())["x"].get<double>(), v);
}

TEST(Report, RationalKeepsExactForm) {
  const auto j = rational_to_json(linf::Rational(3, 1024));
  EXPECT_EQ(j["exact"], "3/1024");
  EXPECT_DOUBLE_EQ(j["approx"].get<double>(), 3.0 / 1024);
}

}  // namespace
}  // namespace cfp
