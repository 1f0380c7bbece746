#pragma once

// Alternating common-fixed-point iteration for a pair of self-maps f, g on a
// closed subset of a normed space:
//
//   x_{2k+1} = f(x_{2k}),   x_{2k+2} = g(x_{2k+1}),   s_n = |x_n - x_{n+1}|
//
// plus a sampler that certifies or refutes the contractive inequality
//
//   phi(|f(x) - g(y)|) <= psi(|x - f(x)|, |y - g(y)|) - phi1(|x - y|)
//
// The engine is generic over the point type and the scalar the distance
// returns, so the same code runs on Hermitian matrices (double) and on the
// exact l-infinity fixture (rational).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "cfp/controls.hpp"
#include "cfp/errors.hpp"

namespace cfp {

template <class Point>
using PointMap = std::function<Point(const Point&)>;

template <class Point, class Scalar = double>
struct NormedSpace {
  /// |x - y| for some norm.
  std::function<Scalar(const Point&, const Point&)> distance;
  /// Optional coordinate check; an empty function accepts every point.
  std::function<bool(const Point&)> is_finite;
};

namespace detail {

template <class Scalar>
bool scalar_is_finite(const Scalar& s) {
  if constexpr (std::is_floating_point_v<Scalar>) {
    return std::isfinite(s);
  } else {
    (void)s;
    return true;
  }
}

}  // namespace detail

enum class Verdict { converged, max_iterations, diverged_nonfinite };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::converged: return "converged";
    case Verdict::max_iterations: return "max_iterations";
    case Verdict::diverged_nonfinite: return "diverged_nonfinite";
  }
  return "unknown";
}

template <class Point, class Scalar = double>
struct IterationTrace {
  std::vector<Point> iterates;
  /// gaps[n] = distance(iterates[n], iterates[n + 1]).
  std::vector<Scalar> gaps;
  /// distance(z, f(z)) and distance(z, g(z)) at the final iterate z. Absent
  /// only when the run diverged.
  std::optional<Scalar> residual_f;
  std::optional<Scalar> residual_g;
  Verdict verdict = Verdict::max_iterations;
  /// Index of the iterate that would have been non-finite.
  std::optional<std::size_t> nonfinite_index;

  const Point& last() const { return iterates.back(); }
  std::size_t steps() const { return gaps.size(); }
};

/// Runs the alternating sequence from x0. Stops once the latest gap and both
/// residuals at the latest iterate are <= tol, after max_iter steps, or on the
/// first non-finite point or distance.
template <class Point, class Scalar>
IterationTrace<Point, Scalar> alternate_iterate(const std::type_identity_t<PointMap<Point>>& f,
                                                const std::type_identity_t<PointMap<Point>>& g, Point x0,
                                                const NormedSpace<Point, Scalar>& space,
                                                const Scalar& tol, std::size_t max_iter) {
  if (!(tol > Scalar(0))) throw std::invalid_argument("tolerance must be positive");
  if (max_iter < 2) throw std::invalid_argument("max_iter must be at least 2");

  IterationTrace<Point, Scalar> trace;
  auto finite_point = [&](const Point& p) { return !space.is_finite || space.is_finite(p); };
  if (!finite_point(x0)) {
    trace.verdict = Verdict::diverged_nonfinite;
    trace.nonfinite_index = 0;
    return trace;
  }
  trace.iterates.push_back(std::move(x0));

  // Evaluates residuals at the last iterate; false on a non-finite result.
  auto residuals = [&]() -> bool {
    const Point& z = trace.iterates.back();
    Point fz = f(z);
    Point gz = g(z);
    if (!finite_point(fz) || !finite_point(gz)) return false;
    Scalar rf = space.distance(z, fz);
    Scalar rg = space.distance(z, gz);
    if (!detail::scalar_is_finite(rf) || !detail::scalar_is_finite(rg)) return false;
    trace.residual_f = std::move(rf);
    trace.residual_g = std::move(rg);
    return true;
  };

  auto diverge = [&](std::size_t index) {
    trace.verdict = Verdict::diverged_nonfinite;
    trace.nonfinite_index = index;
    trace.residual_f.reset();
    trace.residual_g.reset();
    return trace;
  };

  for (std::size_t k = 1; k <= max_iter; ++k) {
    const Point& prev = trace.iterates.back();
    std::optional<Point> next;
    try {
      next = (k % 2 == 1) ? f(prev) : g(prev);
    } catch (const NonFiniteValue&) {
      return diverge(k);
    }
    if (!finite_point(*next)) return diverge(k);
    Scalar gap = space.distance(prev, *next);
    if (!detail::scalar_is_finite(gap)) return diverge(k);

    trace.iterates.push_back(std::move(*next));
    trace.gaps.push_back(gap);

    if (gap <= tol) {
      bool ok;
      try {
        ok = residuals();
      } catch (const NonFiniteValue&) {
        ok = false;
      }
      if (!ok) return diverge(k + 1);
      if (*trace.residual_f <= tol && *trace.residual_g <= tol) {
        trace.verdict = Verdict::converged;
        return trace;
      }
    }
  }

  trace.verdict = Verdict::max_iterations;
  bool ok;
  try {
    ok = residuals();
  } catch (const NonFiniteValue&) {
    ok = false;
  }
  if (!ok) return diverge(max_iter + 1);
  return trace;
}

// -- contractive inequality certificate -------------------------------------

/// Where certificate points come from. A finite domain is enumerated
/// exhaustively over all ordered pairs; otherwise `sample` is drawn twice
/// per pair from a seeded generator.
template <class Point>
struct Domain {
  std::optional<std::vector<Point>> finite_points;
  std::function<Point(std::mt19937_64&)> sample;
};

template <class Point, class Scalar = double>
struct InequalityViolation {
  std::size_t first_index;   // enumeration index (or pair number when sampled)
  std::size_t second_index;
  Point x;
  Point y;
  Scalar lhs;
  Scalar rhs;
};

template <class Point, class Scalar = double>
struct InequalityCertificate {
  std::size_t pairs = 0;
  bool exhaustive = false;
  /// min over pairs of rhs - lhs.
  Scalar worst_margin{};
  std::size_t worst_first_index = 0;
  std::size_t worst_second_index = 0;
  /// Sorted by (first_index, second_index).
  std::vector<InequalityViolation<Point, Scalar>> violations;

  bool holds() const { return violations.empty(); }
};

template <class Point, class Scalar>
struct InequalityTerms {
  Scalar lhs;
  Scalar rhs;
};

/// lhs = phi(|f(x) - g(y)|), rhs = psi(|x - f(x)|, |y - g(y)|) - phi1(|x - y|).
template <class Point, class Scalar>
InequalityTerms<Point, Scalar> contractive_terms(const std::type_identity_t<PointMap<Point>>& f,
                                                 const std::type_identity_t<PointMap<Point>>& g,
                                                 const ControlFunctions<Scalar>& controls,
                                                 const NormedSpace<Point, Scalar>& space,
                                                 const Point& x, const Point& y) {
  const Point fx = f(x);
  const Point gy = g(y);
  Scalar lhs = controls.phi(space.distance(fx, gy));
  Scalar rhs = controls.psi(space.distance(x, fx), space.distance(y, gy)) -
               controls.phi1(space.distance(x, y));
  return {std::move(lhs), std::move(rhs)};
}

template <class Point, class Scalar>
InequalityCertificate<Point, Scalar> certify_contractive_inequality(
    const std::type_identity_t<PointMap<Point>>& f, const std::type_identity_t<PointMap<Point>>& g,
    const ControlFunctions<Scalar>& controls, const Domain<Point>& domain,
    const NormedSpace<Point, Scalar>& space, std::size_t pairs, std::uint64_t seed) {
  InequalityCertificate<Point, Scalar> cert;
  bool first = true;
  auto record = [&](std::size_t i, std::size_t j, const Point& x, const Point& y) {
    auto terms = contractive_terms(f, g, controls, space, x, y);
    Scalar margin = terms.rhs - terms.lhs;
    if (first || margin < cert.worst_margin) {
      cert.worst_margin = margin;
      cert.worst_first_index = i;
      cert.worst_second_index = j;
      first = false;
    }
    if (margin < Scalar(0))
      cert.violations.push_back({i, j, x, y, std::move(terms.lhs), std::move(terms.rhs)});
    ++cert.pairs;
  };

  if (domain.finite_points) {
    cert.exhaustive = true;
    const auto& pts = *domain.finite_points;
    if (pts.empty()) throw std::invalid_argument("finite domain is empty");
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = 0; j < pts.size(); ++j) record(i, j, pts[i], pts[j]);
  } else {
    if (pairs < 1) throw std::invalid_argument("need at least one sample pair");
    if (!domain.sample) throw std::invalid_argument("domain has neither points nor a sampler");
    std::mt19937_64 rng(seed);
    for (std::size_t p = 0; p < pairs; ++p) {
      Point x = domain.sample(rng);
      Point y = domain.sample(rng);
      record(p, p, x, y);
    }
  }
  std::sort(cert.violations.begin(), cert.violations.end(), [](const auto& l, const auto& r) {
    return std::pair(l.first_index, l.second_index) < std::pair(r.first_index, r.second_index);
  });
  return cert;
}

// -- trajectory diagnostics --------------------------------------------------

struct GapMonotonicityReport {
  std::size_t gaps = 0;
  /// Indices n with gaps[n] > gaps[n - 1] + slack.
  std::vector<std::size_t> violations;

  bool monotone() const { return violations.empty(); }
};

/// Checks that s_n is non-increasing. Traces with fewer than two gaps are
/// vacuously monotone.
template <class Scalar>
GapMonotonicityReport gap_monotonicity_check(const std::vector<Scalar>& gaps,
                                             const Scalar& slack = Scalar(1e-12)) {
  GapMonotonicityReport report;
  report.gaps = gaps.size();
  for (std::size_t n = 1; n < gaps.size(); ++n)
    if (gaps[n] > gaps[n - 1] + slack) report.violations.push_back(n);
  return report;
}

template <class Point, class Scalar>
GapMonotonicityReport gap_monotonicity_check(const IterationTrace<Point, Scalar>& trace,
                                             const Scalar& slack = Scalar(1e-12)) {
  return gap_monotonicity_check(trace.gaps, slack);
}

template <class Point, class Scalar = double>
struct UniquenessReport {
  struct Run {
    Verdict verdict;
    std::size_t steps;
    Point limit;
  };
  struct PairDistance {
    std::size_t first;
    std::size_t second;
    Scalar distance;
  };

  std::vector<Run> runs;
  /// Distances between limits of converged runs, i < j.
  std::vector<PairDistance> distances;
  /// Pairs with distance > 10 tol.
  std::vector<PairDistance> flagged;

  bool all_converged() const {
    return std::all_of(runs.begin(), runs.end(),
                       [](const Run& r) { return r.verdict == Verdict::converged; });
  }
  bool unique() const { return all_converged() && flagged.empty(); }
};

/// Runs the alternating iteration from every start and compares the limits.
/// Non-converging starts are recorded and excluded from the comparison.
template <class Point, class Scalar>
UniquenessReport<Point, Scalar> uniqueness_probe(const std::type_identity_t<PointMap<Point>>& f,
                                                 const std::type_identity_t<PointMap<Point>>& g,
                                                 const std::vector<Point>& starts,
                                                 const NormedSpace<Point, Scalar>& space,
                                                 const Scalar& tol, std::size_t max_iter) {
  if (starts.size() < 2) throw std::invalid_argument("uniqueness probe needs at least two starts");
  UniquenessReport<Point, Scalar> report;
  for (const auto& x0 : starts) {
    auto trace = alternate_iterate(f, g, x0, space, tol, max_iter);
    const Point& limit = trace.iterates.empty() ? x0 : trace.last();
    report.runs.push_back({trace.verdict, trace.steps(), limit});
  }
  const Scalar bound = Scalar(10) * tol;
  for (std::size_t i = 0; i < report.runs.size(); ++i)
    for (std::size_t j = i + 1; j < report.runs.size(); ++j) {
      if (report.runs[i].verdict != Verdict::converged ||
          report.runs[j].verdict != Verdict::converged)
        continue;
      Scalar d = space.distance(report.runs[i].limit, report.runs[j].limit);
      typename UniquenessReport<Point, Scalar>::PairDistance pd{i, j, d};
      if (d > bound) report.flagged.push_back(pd);
      report.distances.push_back(std::move(pd));
    }
  return report;
}

}  // namespace cfp
