#pragma once

// JSON problem configs.
//
//   {
//     "n": 2,
//     "equations": [
//       {"Q": [[[1,0],[0,0]], [[0,0],[1,0]]], "sign": "plus",
//        "A": [ <matrix>, ... ], "map": {"kind": "affine", "params": [0.25, 1.0]}},
//       { ... second equation ... }
//     ],
//     "ball_radius": 3.0,
//     "k1": "auto",            // or a number
//     "alpha": 1e-6,
//     "tolerance": 1e-10,
//     "max_iterations": 10000,
//     "seed": 42,
//     "samples": 200
//   }
//
// Matrices are row-major nested arrays; each complex entry is [re, im].

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "cfp/mateq.hpp"

namespace cfp {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EquationConfig {
  ComplexMatrix q;
  Sign sign = Sign::plus;
  std::vector<ComplexMatrix> a;
  MapDescriptor map = MapDescriptor::zero();

  friend bool operator==(const EquationConfig&, const EquationConfig&) = default;
};

struct ProblemConfig {
  std::size_t n = 1;
  std::array<EquationConfig, 2> equations;
  double ball_radius = 1.0;
  /// Absent means "auto".
  std::optional<double> k1;
  double alpha = 1e-6;
  double tolerance = 1e-10;
  std::size_t max_iterations = 10000;
  std::uint64_t seed = 42;
  std::size_t samples = 200;

  /// Builds the validated equation pair; throws ConfigError.
  EquationPair pair() const;
  /// Explicit k1, or the closed-form bound for "auto"; throws ConfigError when
  /// a map kind has no closed form.
  double resolved_k1() const;

  friend bool operator==(const ProblemConfig&, const ProblemConfig&) = default;
};

/// Schema and semantic validation. Errors name the offending field, e.g.
/// "equations[1].A[0]: expected 2x2 matrix".
ProblemConfig parse_config(const nlohmann::json& j);
/// As above from text; syntax errors report line and column.
ProblemConfig parse_config_text(std::string_view text);
ProblemConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const ProblemConfig& config);

nlohmann::json matrix_to_json(const ComplexMatrix& m);

}  // namespace cfp
