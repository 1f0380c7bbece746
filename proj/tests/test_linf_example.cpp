#include <gtest/gtest.h>

#include "cfp/linf_example.hpp"

namespace cfp::linf {
namespace {

Rational pow2_inv(unsigned k) { return Rational(1, boost::multiprecision::cpp_int(1) << k); }

TEST(LinfPoint, BasisRequiresIndexSevenOrMore) {
  EXPECT_THROW(Point::basis(6), std::invalid_argument);
  EXPECT_THROW(Point::basis(0), std::invalid_argument);
  EXPECT_EQ(Point::basis(7).index(), 7u);
  EXPECT_TRUE(Point::zero().is_zero());
  EXPECT_EQ(Point::basis(9).norm(), pow2_inv(9));
  EXPECT_EQ(to_string(Point::basis(12)), "e12");
  EXPECT_EQ(to_string(Point::zero()), "e0");
}

TEST(LinfDistance, Examples) {
  EXPECT_EQ(distance(Point::zero(), Point::zero()), 0);
  EXPECT_EQ(distance(Point::zero(), Point::basis(7)), pow2_inv(7));
  EXPECT_EQ(distance(Point::basis(7), Point::basis(12)), pow2_inv(7));
  EXPECT_EQ(distance(Point::basis(12), Point::basis(7)), pow2_inv(7));
  EXPECT_EQ(distance(Point::basis(40), Point::basis(40)), 0);
}

TEST(LinfMaps, Examples) {
  const auto maps = example_maps();
  EXPECT_EQ(maps.f(Point::basis(9)), Point::zero());
  EXPECT_EQ(maps.f(Point::zero()), Point::zero());
  EXPECT_EQ(maps.g(Point::zero()), Point::zero());
  EXPECT_EQ(maps.g(Point::basis(8)), Point::basis(13));
}

TEST(LinfBundle, Examples) {
  const auto b = example_bundle();
  EXPECT_EQ(b.phi1(pow2_inv(7)), Rational(1, 10) * pow2_inv(11));
  EXPECT_EQ(b.phi1(pow2_inv(7)), pow2_inv(7) / 160);
  EXPECT_EQ(b.psi(Rational(0), pow2_inv(7)), pow2_inv(7) / 20);
  EXPECT_EQ(b.phi(Rational(1, 2)), Rational(2, 100));
  EXPECT_EQ(b.phi(Rational(1, 10)), Rational(2, 100));
  EXPECT_EQ(b.phi(Rational(0)), 0);
  EXPECT_EQ(b.psi(Rational(0), Rational(0)), 0);
  EXPECT_EQ(b.psi(Rational(1, 2), Rational(0)), Rational(1, 100));
}

TEST(LinfBundle, RealDescriptorsAgreeWithExact) {
  const auto exact = example_bundle();
  const auto real = example_bundle_real();
  for (unsigned i : {1u, 3u, 4u, 7u, 20u}) {
    const Rational t = pow2_inv(i);
    const double td = t.convert_to<double>();
    EXPECT_DOUBLE_EQ(real.phi(td), exact.phi(t).convert_to<double>()) << i;
    EXPECT_DOUBLE_EQ(real.phi1(td), exact.phi1(t).convert_to<double>()) << i;
    EXPECT_DOUBLE_EQ(real.psi(td, 0.0), exact.psi(t, Rational(0)).convert_to<double>()) << i;
  }
}

// Contractive-inequality terms at one pair.
struct Terms {
  Rational lhs;
  Rational psi;
  Rational phi1;
};

Terms terms_at(const Point& x, const Point& y) {
  const auto maps = example_maps();
  const auto b = example_bundle();
  const Point fx = maps.f(x), gy = maps.g(y);
  return {b.phi(distance(fx, gy)), b.psi(distance(x, fx), distance(y, gy)), b.phi1(distance(x, y))};
}

TEST(LinfCases, CaseOneZeroAgainstSeven) {
  const auto t = terms_at(Point::zero(), Point::basis(7));
  EXPECT_EQ(t.lhs + t.phi1, Rational(1, 10) * pow2_inv(10));
  EXPECT_EQ(t.psi, Rational(1, 10) * pow2_inv(8));
  EXPECT_LE(t.lhs, t.psi - t.phi1);
}

TEST(LinfCases, CaseTwoSevenAgainstZero) {
  const auto t = terms_at(Point::basis(7), Point::zero());
  EXPECT_EQ(t.lhs + t.phi1, Rational(1, 10) * pow2_inv(11));
  EXPECT_EQ(t.psi, Rational(1, 10) * pow2_inv(8));
  EXPECT_LE(t.lhs, t.psi - t.phi1);
}

TEST(LinfCases, CaseThreeNineAgainstEight) {
  const auto t = terms_at(Point::basis(9), Point::basis(8));
  // phi(|e0 - e13|) = 2^-13/5 = 1/(10 2^12), phi1(|e9 - e8|) = 2^-8/160 = 1/(10 2^12).
  EXPECT_EQ(t.lhs, Rational(1, 10) * pow2_inv(12));
  EXPECT_EQ(t.phi1, Rational(1, 10) * pow2_inv(12));
  EXPECT_EQ(t.lhs + t.phi1, Rational(1, 10) * pow2_inv(11));
  EXPECT_EQ(t.psi, Rational(1, 10) * pow2_inv(10) + Rational(1, 10) * pow2_inv(9));
  EXPECT_LE(t.lhs, t.psi - t.phi1);
}

TEST(ExhaustiveCheck, TwelveHasNoViolations) {
  const auto cert = exhaustive_case_check(12);
  EXPECT_TRUE(cert.holds());
  EXPECT_TRUE(cert.exhaustive);
  EXPECT_EQ(cert.pairs, 7u * 7u);
  EXPECT_GE(cert.worst_margin, 0);
}

TEST(ExhaustiveCheck, EveryBoundUpToSixtyFour) {
  for (unsigned n = 8; n <= 64; ++n) {
    const auto cert = exhaustive_case_check(n);
    EXPECT_TRUE(cert.holds()) << "max_index=" << n;
    EXPECT_EQ(cert.pairs, (n - 5u) * (n - 5u));
  }
}

TEST(ExhaustiveCheck, SmallBoundRejected) {
  EXPECT_THROW(exhaustive_case_check(7), std::invalid_argument);
}

TEST(ExhaustiveCheck, SteepPhi1Fails) {
  const auto cert = exhaustive_case_check(12, Rational(1, 8));
  EXPECT_FALSE(cert.holds());
  EXPECT_LT(cert.worst_margin, 0);
  // At i = 7, case one: 2^-7/5 + 2^-7/8 exceeds psi = 2^-7/20.
  bool case_one_at_seven = false;
  for (const auto& v : cert.violations)
    case_one_at_seven |= v.x.is_zero() && v.y == Point::basis(7);
  EXPECT_TRUE(case_one_at_seven);
}

TEST(LinfIteration, EveryStartReachesZeroInTwoSteps) {
  const auto maps = example_maps();
  for (const auto& x0 : example_domain(64)) {
    const auto t = alternate_iterate(maps.f, maps.g, x0, space(), Rational(1, 10000000000LL), 100);
    ASSERT_EQ(t.verdict, Verdict::converged) << to_string(x0);
    EXPECT_LE(t.steps(), 2u);
    EXPECT_TRUE(t.last().is_zero());
    EXPECT_EQ(*t.residual_f, 0);
    EXPECT_EQ(*t.residual_g, 0);
  }
}

TEST(LinfIteration, UniqueLimit) {
  const auto maps = example_maps();
  const auto r = uniqueness_probe(maps.f, maps.g, example_domain(64), space(), Rational(1, 10000000000LL), 100);
  EXPECT_TRUE(r.unique());
  EXPECT_EQ(r.runs.size(), 59u);
  for (const auto& run : r.runs) EXPECT_TRUE(run.limit.is_zero());
}

TEST(LinfDomain, Contents) {
  const auto d = example_domain(10);
  ASSERT_EQ(d.size(), 5u);
  EXPECT_TRUE(d[0].is_zero());
  EXPECT_EQ(d[1], Point::basis(7));
  EXPECT_EQ(d[4], Point::basis(10));
}

}  // namespace
}  // namespace cfp::linf
