#pragma once

// The three CLI commands as library calls, returning the exit code and the
// JSON report. The `cfp` executable only parses flags and writes output.

#include <cstdint>
#include <optional>

#include "json.hpp"

#include "cfp/config.hpp"

namespace cfp {

inline constexpr const char* kToolVersion = "0.1.0";

enum class ExitCode : int { pass = 0, input_error = 1, violation = 2, not_converged = 3 };

struct CommandResult {
  ExitCode code = ExitCode::pass;
  nlohmann::json report;
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<double> tol;
  std::optional<std::size_t> max_iter;
};

/// Throws ConfigError when an override is out of range.
void apply_overrides(ProblemConfig& config, const Overrides& overrides);

/// Conditions (i)-(iii) and the derived certificate. pass, or violation when
/// any sampled check fails.
CommandResult run_verify(const ProblemConfig& config);

/// Conditions, certificate and the alternating solve. pass when the solve
/// converged, not_converged otherwise; condition results are informational.
CommandResult run_solve(const ProblemConfig& config);

struct LinfOptions {
  unsigned max_index = 50;
  /// Replaces phi1(t) = t/160 by t/8, which breaks the inequality.
  bool inject_fault = false;
};

/// Exhaustive inequality check, iteration from e7 and a uniqueness probe
/// from every point of the domain. pass iff no violations and every limit
/// is e0.
CommandResult run_example_linf(const LinfOptions& options);

/// Removes the wall-time field so reports can be compared byte for byte.
nlohmann::json without_wall_time(nlohmann::json report);

}  // namespace cfp
