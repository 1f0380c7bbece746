#include "cfp/mateq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cfp/errors.hpp"

namespace cfp {

const char* to_string(Sign s) { return s == Sign::plus ? "plus" : "minus"; }

const char* to_string(MapDescriptor::Kind k) {
  switch (k) {
    case MapDescriptor::Kind::zero: return "zero";
    case MapDescriptor::Kind::scaled_identity: return "scaled_identity";
    case MapDescriptor::Kind::spectral_power: return "spectral_power";
    case MapDescriptor::Kind::spectral_tanh: return "spectral_tanh";
    case MapDescriptor::Kind::affine: return "affine";
  }
  return "unknown";
}

namespace {

void require_finite(std::initializer_list<double> values, const char* what) {
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite parameter");
}

}  // namespace

// -- MapDescriptor --------------------------------------------------------------

MapDescriptor MapDescriptor::zero() { return {Kind::zero, {}}; }

MapDescriptor MapDescriptor::scaled_identity(double c) {
  require_finite({c}, "scaled_identity");
  return {Kind::scaled_identity, {c}};
}

MapDescriptor MapDescriptor::spectral_power(double c, double p) {
  require_finite({c, p}, "spectral_power");
  if (p <= 0.0) throw std::invalid_argument("spectral_power: exponent must be positive");
  return {Kind::spectral_power, {c, p}};
}

MapDescriptor MapDescriptor::spectral_tanh(double c) {
  require_finite({c}, "spectral_tanh");
  return {Kind::spectral_tanh, {c}};
}

MapDescriptor MapDescriptor::affine(double c, double d) {
  require_finite({c, d}, "affine");
  return {Kind::affine, {c, d}};
}

HermitianMatrix MapDescriptor::operator()(const HermitianMatrix& x) const {
  const std::size_t n = x.dim();
  switch (kind_) {
    case Kind::zero:
      return HermitianMatrix::symmetrize(ComplexMatrix(n));
    case Kind::scaled_identity:
      return params_[0] * x;
    case Kind::spectral_power: {
      const double c = params_[0];
      const double p = params_[1];
      return apply_spectral_function(x, [c, p](double lambda) {
        return lambda <= 0.0 ? 0.0 : c * std::pow(lambda, p);
      });
    }
    case Kind::spectral_tanh: {
      const double c = params_[0];
      return apply_spectral_function(x, [c](double lambda) { return c * std::tanh(lambda); });
    }
    case Kind::affine:
      return HermitianMatrix::symmetrize(x.matrix() * Complex(params_[0]) +
                                         ComplexMatrix::identity(n) * Complex(params_[1]));
  }
  throw std::logic_error("unhandled map kind");
}

std::optional<double> MapDescriptor::auto_k1(double a) const {
  switch (kind_) {
    case Kind::zero: return 0.0;
    case Kind::scaled_identity: return std::abs(params_[0]) * a;
    case Kind::spectral_tanh: return std::abs(params_[0]);
    case Kind::affine: return std::abs(params_[0]) * a + std::abs(params_[1]);
    case Kind::spectral_power: return std::nullopt;
  }
  return std::nullopt;
}

// -- specs ----------------------------------------------------------------------

EquationSpec::EquationSpec(HermitianMatrix q_, Sign sign_, std::vector<ComplexMatrix> coefficients_,
                           MapDescriptor map_)
    : q(std::move(q_)), sign(sign_), coefficients(std::move(coefficients_)), map(std::move(map_)) {
  if (q.dim() == 0) throw std::invalid_argument("Q must be non-empty");
  if (!is_positive_definite(q)) throw std::invalid_argument("Q must be positive definite");
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (coefficients[i].dim() != q.dim()) {
      throw std::invalid_argument("coefficient A[" + std::to_string(i) + "] is " +
                                  std::to_string(coefficients[i].dim()) + "x" +
                                  std::to_string(coefficients[i].dim()) + ", Q is " +
                                  std::to_string(q.dim()) + "x" + std::to_string(q.dim()));
    }
    if (!coefficients[i].all_finite())
      throw std::invalid_argument("coefficient A[" + std::to_string(i) + "] has non-finite entries");
  }
}

EquationPair::EquationPair(EquationSpec first_, EquationSpec second_)
    : first(std::move(first_)), second(std::move(second_)) {
  if (first.dim() != second.dim()) throw std::invalid_argument("equations differ in dimension");
  if (first.coefficients != second.coefficients)
    throw std::invalid_argument("equations must share the same coefficient list A_i");
}

// -- maps -----------------------------------------------------------------------

HermitianMatrix coefficient_sum(const EquationSpec& spec, const HermitianMatrix& x) {
  if (x.dim() != spec.dim()) {
    throw std::invalid_argument("dimension mismatch: X is " + std::to_string(x.dim()) +
                                ", equation is " + std::to_string(spec.dim()));
  }
  const HermitianMatrix fx = spec.map(x);
  ComplexMatrix sum(spec.dim());
  for (const auto& a : spec.coefficients) sum += a.adjoint() * fx.matrix() * a;
  return HermitianMatrix::symmetrize(sum);
}

PointMap<HermitianMatrix> induced_map(const EquationSpec& spec) {
  return [spec](const HermitianMatrix& x) {
    const HermitianMatrix s = coefficient_sum(spec, x);
    return spec.sign == Sign::plus ? spec.q + s : spec.q - s;
  };
}

NormedSpace<HermitianMatrix, double> trace_norm_space() {
  return {[](const HermitianMatrix& x, const HermitianMatrix& y) { return trace_norm(x - y); },
          [](const HermitianMatrix& x) { return x.matrix().all_finite(); }};
}

double residual(const EquationSpec& spec, const HermitianMatrix& x) {
  return trace_norm(x - induced_map(spec)(x));
}

double compute_k(const EquationPair& pair) {
  double k = 0.0;
  for (const auto& a : pair.first.coefficients) k += trace_norm(a.adjoint()) * trace_norm(a);
  return k;
}

std::optional<double> auto_k1(const EquationPair& pair, double a) {
  const auto k1 = pair.first.map.auto_k1(a);
  const auto k2 = pair.second.map.auto_k1(a);
  if (!k1 || !k2) return std::nullopt;
  return std::max(*k1, *k2);
}

HermitianMatrix sample_ball_point(std::size_t n, double a, std::mt19937_64& rng) {
  HermitianMatrix h = random_hermitian(n, rng);
  // u on (0, 1]
  const double u = 1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  const double norm = trace_norm(h);
  if (norm == 0.0) return h;
  return (u * a / norm) * h;
}

// -- conditions -------------------------------------------------------------------

ConditionI check_condition_i(const EquationPair& pair, double a, double k1) {
  if (!(a > 0.0)) throw std::invalid_argument("ball radius a must be positive");
  if (!(k1 >= 0.0)) throw std::invalid_argument("k1 must be non-negative");
  ConditionI r;
  r.k = compute_k(pair);
  r.k1 = k1;
  r.bound = a - r.k * k1 * static_cast<double>(pair.dim());
  r.margin_q1 = r.bound - trace_norm(pair.first.q);
  r.margin_q2 = r.bound - trace_norm(pair.second.q);
  r.pass = r.margin_q1 >= 0.0 && r.margin_q2 >= 0.0;
  return r;
}

namespace {

struct BranchResult {
  bool holds;
  double margin;
};

BranchResult condition_ii_branch(const EquationSpec& spec, const HermitianMatrix& x) {
  const HermitianMatrix s = coefficient_sum(spec, x);
  if (spec.sign == Sign::plus) return {is_positive_semidefinite(s), min_eigenvalue(s)};
  const HermitianMatrix gap = spec.q - s;
  return {is_positive_definite(gap), min_eigenvalue(gap)};
}

}  // namespace

ConditionII check_condition_ii(const EquationPair& pair, double a, std::size_t samples,
                               std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  ConditionII r;
  r.samples = samples;
  r.first_branch_uniform = true;
  r.second_branch_uniform = true;
  r.min_margin = std::numeric_limits<double>::infinity();
  r.min_margin_first = r.min_margin;
  r.min_margin_second = r.min_margin;

  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const HermitianMatrix x = sample_ball_point(pair.dim(), a, rng);
    const auto b1 = condition_ii_branch(pair.first, x);
    const auto b2 = condition_ii_branch(pair.second, x);
    r.first_branch_uniform = r.first_branch_uniform && b1.holds;
    r.second_branch_uniform = r.second_branch_uniform && b2.holds;
    r.min_margin_first = std::min(r.min_margin_first, b1.margin);
    r.min_margin_second = std::min(r.min_margin_second, b2.margin);
    r.min_margin = std::min(r.min_margin, std::max(b1.margin, b2.margin));
    if (!b1.holds && !b2.holds) r.violating_samples.push_back(s);
  }
  r.pass = r.violating_samples.empty();
  return r;
}

double condition_iii_margin(const EquationPair& pair, double k1, double alpha,
                            const HermitianMatrix& x, const HermitianMatrix& y) {
  const double n = static_cast<double>(pair.dim());
  const double k = compute_k(pair);
  const double lhs = 2.0 * k * k1 + singular_values((pair.first.q - pair.second.q).matrix()).front();

  auto term = [](const EquationSpec& spec, const HermitianMatrix& z) {
    const double s = trace_norm(coefficient_sum(spec, z));
    const double shifted = spec.sign == Sign::plus ? trace_norm(z - spec.q) : trace_norm(z + spec.q);
    return std::abs(s - shifted);
  };
  const double rhs =
      std::max(term(pair.first, x), term(pair.second, y)) / (n + 1.0) - alpha * trace_norm(x - y);
  return rhs - lhs;
}

ConditionIII check_condition_iii(const EquationPair& pair, double a, double k1, double alpha,
                                 std::size_t samples, std::uint64_t seed) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  ConditionIII r;
  r.samples = samples;
  r.lhs = 2.0 * compute_k(pair) * k1 +
          singular_values((pair.first.q - pair.second.q).matrix()).front();
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const HermitianMatrix x = sample_ball_point(pair.dim(), a, rng);
    const HermitianMatrix y = sample_ball_point(pair.dim(), a, rng);
    const double margin = condition_iii_margin(pair, k1, alpha, x, y);
    if (s == 0 || margin < r.worst_margin) {
      r.worst_margin = margin;
      r.worst_sample = s;
    }
    if (margin < 0.0) r.violations.push_back({s, margin});
  }
  r.pass = r.violations.empty();
  return r;
}

ControlBundle derived_control_bundle(std::size_t n, double alpha) {
  const double nd = static_cast<double>(n);
  auto phi = AlteringDistanceFn::linear(1.0);
  return {phi, AlteringDistanceFn::linear(nd * alpha),
          PsiControl::max_alpha_phi(nd / (nd + 1.0), phi)};
}

InequalityCertificate<HermitianMatrix, double> certify_derived_inequality(
    const EquationPair& pair, double a, double alpha, std::size_t samples, std::uint64_t seed) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  const std::size_t n = pair.dim();
  Domain<HermitianMatrix> ball{
      std::nullopt, [n, a](std::mt19937_64& rng) { return sample_ball_point(n, a, rng); }};
  return certify_contractive_inequality(induced_map(pair.first), induced_map(pair.second),
                                        derived_control_bundle(n, alpha).functions(), ball,
                                        trace_norm_space(), samples, seed);
}

ConditionReport check_conditions(const EquationPair& pair, const ConditionParams& p) {
  ConditionReport r;
  r.k = compute_k(pair);
  r.k1 = p.k1;
  r.samples = p.samples;
  r.seed = p.seed;
  r.condition_i = check_condition_i(pair, p.a, p.k1);
  r.condition_ii = check_condition_ii(pair, p.a, p.samples, p.seed);
  r.condition_iii = check_condition_iii(pair, p.a, p.k1, p.alpha, p.samples, p.seed);
  return r;
}

// -- solver -----------------------------------------------------------------------

SolveReport solve_common(const EquationPair& pair, const SolveOptions& options) {
  HermitianMatrix x0 = options.x0.value_or(pair.first.q);
  if (x0.dim() != pair.dim()) throw std::invalid_argument("initial iterate has wrong dimension");

  SolveReport r;
  r.tolerance = options.tol;
  r.trace = alternate_iterate(induced_map(pair.first), induced_map(pair.second), std::move(x0),
                              trace_norm_space(), options.tol, options.max_iter);
  r.verdict = r.trace.verdict;
  r.best_iterate = r.trace.iterates.empty() ? pair.first.q : r.trace.last();

  const double inf = std::numeric_limits<double>::infinity();
  try {
    r.residual_1 = residual(pair.first, r.best_iterate);
    r.residual_2 = residual(pair.second, r.best_iterate);
  } catch (const NonFiniteValue&) {
    r.residual_1 = r.residual_2 = inf;
  }
  r.min_eigenvalue = min_eigenvalue(r.best_iterate);
  r.positive_definite = is_positive_definite(r.best_iterate);
  r.trace_norm = trace_norm(r.best_iterate);
  r.in_ball = r.trace_norm <= options.a + 1e-12 * (1.0 + options.a);
  if (r.verdict == Verdict::converged) r.solution = r.best_iterate;
  return r;
}

}  // namespace cfp
