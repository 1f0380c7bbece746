#include "cfp/commands.hpp"

#include <chrono>

#include "cfp/report.hpp"

namespace cfp {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

json header(const char* command) {
  return {{"tool", "cfp"}, {"version", kToolVersion}, {"command", command}};
}

struct Checks {
  ConditionReport conditions;
  InequalityCertificate<HermitianMatrix, double> certificate;
};

Checks run_checks(const ProblemConfig& config, const EquationPair& pair) {
  ConditionParams params{config.ball_radius, config.resolved_k1(), config.alpha, config.samples,
                         config.seed};
  return {check_conditions(pair, params),
          certify_derived_inequality(pair, config.ball_radius, config.alpha, config.samples,
                                     config.seed)};
}

}  // namespace

void apply_overrides(ProblemConfig& config, const Overrides& o) {
  if (o.seed) config.seed = *o.seed;
  if (o.samples) {
    if (*o.samples < 1) throw ConfigError("--samples: must be at least 1");
    config.samples = *o.samples;
  }
  if (o.tol) {
    if (!(*o.tol > 0.0)) throw ConfigError("--tol: must be positive");
    config.tolerance = *o.tol;
  }
  if (o.max_iter) {
    if (*o.max_iter < 2) throw ConfigError("--max-iter: must be at least 2");
    config.max_iterations = *o.max_iter;
  }
}

CommandResult run_verify(const ProblemConfig& config) {
  const auto start = Clock::now();
  const EquationPair pair = config.pair();
  const Checks checks = run_checks(config, pair);

  const bool ok = checks.conditions.all_pass() && checks.certificate.holds();
  json report = header("verify");
  report["config"] = to_json(config);
  report["conditions"] = to_json(checks.conditions);
  report["certificate"] = to_json(checks.certificate);
  report["all_pass"] = ok;
  report["wall_time_seconds"] = seconds_since(start);
  return {ok ? ExitCode::pass : ExitCode::violation, std::move(report)};
}

CommandResult run_solve(const ProblemConfig& config) {
  const auto start = Clock::now();
  const EquationPair pair = config.pair();
  const Checks checks = run_checks(config, pair);
  const SolveReport solve =
      solve_common(pair, {config.ball_radius, config.tolerance, config.max_iterations, std::nullopt});

  json report = header("solve");
  report["config"] = to_json(config);
  report["conditions"] = to_json(checks.conditions);
  report["certificate"] = to_json(checks.certificate);
  report["solve"] = to_json(solve);
  report["wall_time_seconds"] = seconds_since(start);
  const bool converged = solve.verdict == Verdict::converged;
  return {converged ? ExitCode::pass : ExitCode::not_converged, std::move(report)};
}

CommandResult run_example_linf(const LinfOptions& options) {
  using linf::Point;
  using linf::Rational;
  const auto start = Clock::now();
  if (options.max_index < 8) throw ConfigError("--max-index: must be at least 8");

  const Rational slope = options.inject_fault ? Rational(1, 8) : Rational(1, 160);
  const auto certificate = linf::exhaustive_case_check(options.max_index, slope);

  const auto maps = linf::example_maps();
  const auto space = linf::space();
  const Rational tol(1, 10000000000LL);
  const auto trace = alternate_iterate(maps.f, maps.g, Point::basis(7), space, tol, 100);
  const auto probe =
      uniqueness_probe(maps.f, maps.g, linf::example_domain(options.max_index), space, tol, 100);

  const auto dominance =
      verify_psi_dominance(linf::example_bundle_real(), SamplingGrid::log_uniform(0.1));

  bool limits_e0 = trace.verdict == Verdict::converged && trace.last().is_zero() && probe.unique();
  for (const auto& run : probe.runs) limits_e0 = limits_e0 && run.limit.is_zero();
  const bool ok = certificate.holds() && limits_e0;

  json report = header("example-linf");
  report["max_index"] = options.max_index;
  report["fault_injected"] = options.inject_fault;
  report["phi1_slope"] = slope.str();
  report["certificate"] = to_json(certificate);
  report["trace_from_e7"] = to_json(trace);
  report["uniqueness"] = to_json(probe);
  report["limit"] = trace.iterates.empty() ? json(nullptr) : json(linf::to_string(trace.last()));
  report["psi_dominance"] = {{"samples", dominance.samples},
                             {"holds", dominance.holds()},
                             {"violations", dominance.violations.size()}};
  report["all_pass"] = ok;
  report["wall_time_seconds"] = seconds_since(start);
  return {ok ? ExitCode::pass : ExitCode::violation, std::move(report)};
}

json without_wall_time(json report) {
  report.erase("wall_time_seconds");
  return report;
}

}  // namespace cfp
