#pragma once

// Exact model of a two-map example in l-infinity with the sup norm:
//
//   C = {e0, e7, e8, ...},  e0 = 0,  e_i = 2^-i at position i, 0 elsewhere
//   f(x) = e0
//   g(e0) = e0,  g(e_i) = e_{i+5}
//
//   phi(t)  = 2t/10 for t <= 1/10, 2/100 beyond
//   phi1(t) = t/160
//   psi(t1, t2) = (t1 + t2)/20 when t1, t2 <= 1/10, 1/100 elsewhere
//
// Every distance is a power of two and every control value is rational, so
// the contractive inequality is checked in exact arithmetic. Near index 64
// the quantities are around 2^-69, below what a double comparison resolves
// after the subtraction in the right-hand side.

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cfp/controls.hpp"
#include "cfp/fixpoint.hpp"

namespace cfp::linf {

using Rational = boost::multiprecision::cpp_rational;

/// e0 (index 0) or e_i for i >= 7.
class Point {
 public:
  static Point zero() { return Point(0); }
  /// Throws std::invalid_argument for i < 7.
  static Point basis(unsigned i);

  unsigned index() const noexcept { return index_; }
  bool is_zero() const noexcept { return index_ == 0; }
  /// Norm 2^-i, or 0 for e0.
  Rational norm() const;

  friend auto operator<=>(const Point&, const Point&) = default;

 private:
  explicit Point(unsigned index) : index_(index) {}
  unsigned index_;
};

std::string to_string(const Point& p);

/// 2^-i
Rational power_of_half(unsigned i);

/// Sup-norm distance: 0, 2^-i against e0, or 2^-min(i, j) between e_i and e_j
/// (disjoint supports).
Rational distance(const Point& x, const Point& y);

NormedSpace<Point, Rational> space();

struct Maps {
  PointMap<Point> f;
  PointMap<Point> g;
};

Maps example_maps();

/// Default slope of phi1 is 1/160. Other slopes exist for fault injection.
ControlFunctions<Rational> example_bundle(const Rational& phi1_slope = Rational(1, 160));

/// The same controls as double-valued descriptors, for the grid verifiers.
ControlBundle example_bundle_real();

/// {e0, e7, e8, ..., e_max_index}
std::vector<Point> example_domain(unsigned max_index);

/// Enumerates all ordered pairs of the domain and checks the contractive
/// inequality exactly. Throws std::invalid_argument for max_index < 8.
InequalityCertificate<Point, Rational> exhaustive_case_check(
    unsigned max_index, const Rational& phi1_slope = Rational(1, 160));

}  // namespace cfp::linf
