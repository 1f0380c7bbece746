#include "cfp/linf_example.hpp"

#include <algorithm>
#include <stdexcept>

namespace cfp::linf {

Point Point::basis(unsigned i) {
  if (i < 7) throw std::invalid_argument("e_i requires i >= 7, got " + std::to_string(i));
  return Point(i);
}

Rational Point::norm() const { return is_zero() ? Rational(0) : power_of_half(index_); }

std::string to_string(const Point& p) { return "e" + std::to_string(p.index()); }

Rational power_of_half(unsigned i) {
  boost::multiprecision::cpp_int den = 1;
  den <<= i;
  return Rational(boost::multiprecision::cpp_int(1), den);
}

Rational distance(const Point& x, const Point& y) {
  if (x == y) return 0;
  if (x.is_zero()) return y.norm();
  if (y.is_zero()) return x.norm();
  return power_of_half(std::min(x.index(), y.index()));
}

NormedSpace<Point, Rational> space() { return {&distance, {}}; }

Maps example_maps() {
  return {[](const Point&) { return Point::zero(); },
          [](const Point& x) { return x.is_zero() ? x : Point::basis(x.index() + 5); }};
}

ControlFunctions<Rational> example_bundle(const Rational& phi1_slope) {
  const Rational tenth(1, 10);
  return {
      [tenth](const Rational& t) -> Rational {
        return t <= tenth ? Rational(2 * t / 10) : Rational(2, 100);
      },
      [phi1_slope](const Rational& t) -> Rational { return phi1_slope * t; },
      [tenth](const Rational& t1, const Rational& t2) -> Rational {
        return (t1 <= tenth && t2 <= tenth) ? Rational((t1 + t2) / 20) : Rational(1, 100);
      }};
}

ControlBundle example_bundle_real() {
  return {AlteringDistanceFn::capped_linear(0.2, 0.1, 0.02), AlteringDistanceFn::linear(1.0 / 160.0),
          PsiControl::sum_scaled(1.0 / 20.0, 0.1, 0.01)};
}

std::vector<Point> example_domain(unsigned max_index) {
  std::vector<Point> pts{Point::zero()};
  for (unsigned i = 7; i <= max_index; ++i) pts.push_back(Point::basis(i));
  return pts;
}

InequalityCertificate<Point, Rational> exhaustive_case_check(unsigned max_index,
                                                             const Rational& phi1_slope) {
  if (max_index < 8) throw std::invalid_argument("max_index must be at least 8");
  const auto maps = example_maps();
  Domain<Point> domain{example_domain(max_index), {}};
  return certify_contractive_inequality(maps.f, maps.g, example_bundle(phi1_slope), domain, space(),
                                        1, 0);
}

}  // namespace cfp::linf
