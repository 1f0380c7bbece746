// cfp: verify sufficient conditions for, and solve, pairs of nonlinear
// matrix equations X = Q1 +/- sum A_i* F(X) A_i, X = Q2 +/- sum A_i* G(X) A_i.
//
// Exit codes: 0 pass, 1 input error, 2 condition/inequality violation,
// 3 non-convergence.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "cfp/commands.hpp"

namespace {

int emit(const cfp::CommandResult& result, const std::string& out_path) {
  const std::string text = result.report.dump(2) + "\n";
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write report to " << out_path << "\n";
      return static_cast<int>(cfp::ExitCode::input_error);
    }
    out << text;
  }
  return static_cast<int>(result.code);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Common positive definite solutions of nonlinear matrix equation pairs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cfp::kToolVersion));

  std::string config_path;
  std::string out_path;
  cfp::Overrides overrides;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  double tol = 0.0;
  std::size_t max_iter = 0;

  auto add_problem_flags = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "Problem config (JSON)")->required();
    cmd->add_option("--seed", seed, "Override the sampling seed");
    cmd->add_option("--samples", samples, "Override the number of samples");
    cmd->add_option("--tol", tol, "Override the solver tolerance");
    cmd->add_option("--max-iter", max_iter, "Override the iteration cap");
    cmd->add_option("--out", out_path, "Report path (default stdout)");
  };

  auto* verify = app.add_subcommand("verify", "Check the sufficient conditions on samples");
  add_problem_flags(verify);
  auto* solve = app.add_subcommand("solve", "Check conditions and solve by alternating iteration");
  add_problem_flags(solve);

  cfp::LinfOptions linf;
  auto* example = app.add_subcommand("example-linf", "Run the exact l-infinity fixture");
  example->add_option("--max-index", linf.max_index, "Largest basis index e_i in the domain")
      ->capture_default_str();
  example->add_flag("--inject-fault", linf.inject_fault,
                    "Use phi1(t) = t/8, which must produce violations");
  example->add_option("--out", out_path, "Report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(cfp::ExitCode::input_error);
  }

  auto collect = [&](CLI::App* cmd) {
    if (cmd->count("--seed")) overrides.seed = seed;
    if (cmd->count("--samples")) overrides.samples = samples;
    if (cmd->count("--tol")) overrides.tol = tol;
    if (cmd->count("--max-iter")) overrides.max_iter = max_iter;
  };

  try {
    if (*example) return emit(cfp::run_example_linf(linf), out_path);

    CLI::App* cmd = *verify ? verify : solve;
    collect(cmd);
    cfp::ProblemConfig config = cfp::load_config(config_path);
    cfp::apply_overrides(config, overrides);
    return emit(*verify ? cfp::run_verify(config) : cfp::run_solve(config), out_path);
  } catch (const cfp::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(cfp::ExitCode::input_error);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(cfp::ExitCode::input_error);
  }
}
