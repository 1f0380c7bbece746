#pragma once

// Pairs of nonlinear matrix equations
//
//   X = Q1 +/- sum_i A_i* F(X) A_i
//   X = Q2 +/- sum_i A_i* G(X) A_i
//
// over Hermitian n x n matrices, recast as a common-fixed-point problem for
// the induced maps f, g on the trace-norm ball {X : |X| <= a}. Provides the
// sampled checkers for the sufficient conditions (i)-(iii), the derived
// contractive certificate and the alternating solver.
//
// Condition checkers are evidence, not proof: a pass means no sampled point
// of the ball violated the hypothesis.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cfp/fixpoint.hpp"
#include "cfp/spectra.hpp"

namespace cfp {

enum class Sign { plus, minus };

const char* to_string(Sign s);

/// Built-in Hermitian-to-Hermitian maps F. All are spectral, so F(X) commutes
/// with X.
class MapDescriptor {
 public:
  enum class Kind { zero, scaled_identity, spectral_power, spectral_tanh, affine };

  static MapDescriptor zero();
  /// X -> c X
  static MapDescriptor scaled_identity(double c);
  /// X -> c (X_+)^p, X_+ the eigenvalue-clamped positive part; p > 0.
  static MapDescriptor spectral_power(double c, double p);
  /// X -> c tanh(X)
  static MapDescriptor spectral_tanh(double c);
  /// X -> c X + d I
  static MapDescriptor affine(double c, double d);

  Kind kind() const noexcept { return kind_; }
  const std::vector<double>& params() const noexcept { return params_; }

  HermitianMatrix operator()(const HermitianMatrix& x) const;

  /// Closed-form k1 with |eigenvalues of F(X)| <= k1 whenever |X| <= a, for
  /// the kinds that admit one (every kind except spectral_power).
  std::optional<double> auto_k1(double a) const;

  friend bool operator==(const MapDescriptor&, const MapDescriptor&) = default;

 private:
  MapDescriptor(Kind kind, std::vector<double> params)
      : kind_(kind), params_(std::move(params)) {}

  Kind kind_;
  std::vector<double> params_;
};

const char* to_string(MapDescriptor::Kind k);

struct EquationSpec {
  HermitianMatrix q;
  Sign sign;
  std::vector<ComplexMatrix> coefficients;
  MapDescriptor map;

  /// Checks Q positive definite and matching dimensions; throws
  /// std::invalid_argument.
  EquationSpec(HermitianMatrix q, Sign sign, std::vector<ComplexMatrix> coefficients,
               MapDescriptor map);

  std::size_t dim() const noexcept { return q.dim(); }
};

/// Two equations sharing the coefficient family {A_i}.
struct EquationPair {
  EquationSpec first;
  EquationSpec second;

  /// Rejects dimension mismatches and differing coefficient lists.
  EquationPair(EquationSpec first, EquationSpec second);

  std::size_t dim() const noexcept { return first.dim(); }
};

/// sum_i A_i* F(X) A_i
HermitianMatrix coefficient_sum(const EquationSpec& spec, const HermitianMatrix& x);

/// X -> Q +/- sum_i A_i* F(X) A_i
PointMap<HermitianMatrix> induced_map(const EquationSpec& spec);

/// Trace-norm distance on Hermitian matrices, with finiteness check.
NormedSpace<HermitianMatrix, double> trace_norm_space();

/// |X - Q -/+ sum_i A_i* F(X) A_i|, trace norm.
double residual(const EquationSpec& spec, const HermitianMatrix& x);

/// k = sum_i |A_i*| |A_i|.
double compute_k(const EquationPair& pair);

/// Larger of the two maps' closed-form k1 bounds, if both have one.
std::optional<double> auto_k1(const EquationPair& pair, double a);

/// Random Hermitian X with |X| = u a, u uniform on (0, 1].
HermitianMatrix sample_ball_point(std::size_t n, double a, std::mt19937_64& rng);

// -- condition checkers -------------------------------------------------------

struct ConditionI {
  bool pass = false;
  double k = 0.0;
  double k1 = 0.0;
  /// a - k k1 n
  double bound = 0.0;
  /// bound - |Q1|, bound - |Q2|
  double margin_q1 = 0.0;
  double margin_q2 = 0.0;
};

ConditionI check_condition_i(const EquationPair& pair, double a, double k1);

struct ConditionII {
  bool pass = false;
  std::size_t samples = 0;
  /// min over samples of the larger of the two branch margins. A branch
  /// margin is lambda_min(S) for a plus equation and lambda_min(Q - S) for a
  /// minus equation, S = sum A_i* F(X) A_i.
  double min_margin = 0.0;
  double min_margin_first = 0.0;
  double min_margin_second = 0.0;
  /// Whether one branch held on every sample by itself.
  bool first_branch_uniform = false;
  bool second_branch_uniform = false;
  std::vector<std::size_t> violating_samples;
};

/// Pointwise "either/or": each sampled X must satisfy at least one branch.
ConditionII check_condition_ii(const EquationPair& pair, double a, std::size_t samples,
                               std::uint64_t seed);

struct ConditionIIIViolation {
  std::size_t sample;
  double margin;
};

struct ConditionIII {
  bool pass = false;
  std::size_t samples = 0;
  /// 2 k k1 + lambda_max(Q1 - Q2), largest singular value.
  double lhs = 0.0;
  double worst_margin = 0.0;
  std::size_t worst_sample = 0;
  std::vector<ConditionIIIViolation> violations;
};

/// rhs - lhs of condition (iii) at one (X, Y):
///   rhs = max{|S_F(X)| - |X -/+ Q1|, ...}/(n+1) - alpha |X - Y|
/// with X - Q for a plus equation and X + Q for a minus equation.
double condition_iii_margin(const EquationPair& pair, double k1, double alpha,
                            const HermitianMatrix& x, const HermitianMatrix& y);

/// Draws (X, Y) pairs from the ball in the same order as
/// certify_derived_inequality, so identical seeds give identical pairs.
ConditionIII check_condition_iii(const EquationPair& pair, double a, double k1, double alpha,
                                 std::size_t samples, std::uint64_t seed);

/// Certificate of
///   |f(X) - g(Y)| <= max{n/(n+1) |f(X) - X|, n/(n+1) |g(Y) - Y|} - n alpha |X - Y|
/// i.e. the contractive inequality with phi(t) = t, phi1(t) = n alpha t and
/// psi = phi(max{n/(n+1) t1, n/(n+1) t2}).
InequalityCertificate<HermitianMatrix, double> certify_derived_inequality(
    const EquationPair& pair, double a, double alpha, std::size_t samples, std::uint64_t seed);

ControlBundle derived_control_bundle(std::size_t n, double alpha);

struct ConditionParams {
  double a = 1.0;
  double k1 = 0.0;
  double alpha = 1e-6;
  std::size_t samples = 200;
  std::uint64_t seed = 42;
};

struct ConditionReport {
  double k = 0.0;
  double k1 = 0.0;
  ConditionI condition_i;
  ConditionII condition_ii;
  ConditionIII condition_iii;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  /// Always true: sampled evidence, not a proof over the ball.
  bool sampled_not_proven = true;

  bool all_pass() const {
    return condition_i.pass && condition_ii.pass && condition_iii.pass;
  }
};

ConditionReport check_conditions(const EquationPair& pair, const ConditionParams& params);

// -- solver ---------------------------------------------------------------------

struct SolveOptions {
  double a = 1.0;
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  /// Defaults to Q1.
  std::optional<HermitianMatrix> x0;
};

struct SolveReport {
  Verdict verdict = Verdict::max_iterations;
  /// Present iff converged.
  std::optional<HermitianMatrix> solution;
  /// Last finite iterate.
  HermitianMatrix best_iterate;
  IterationTrace<HermitianMatrix, double> trace;
  double tolerance = 0.0;
  double residual_1 = 0.0;
  double residual_2 = 0.0;
  double min_eigenvalue = 0.0;
  bool positive_definite = false;
  double trace_norm = 0.0;
  bool in_ball = false;
};

SolveReport solve_common(const EquationPair& pair, const SolveOptions& options);

}  // namespace cfp
