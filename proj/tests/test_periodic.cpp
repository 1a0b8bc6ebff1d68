#include "henon/green.hpp"
#include "henon/periodic.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace henon;

namespace {

bool contains(const std::vector<PeriodicPoint>& pts, const Point& z, double tol) {
  for (const auto& p : pts)
    if ((p.point - z).norm() < tol) return true;
  return false;
}

HenonMap random_map(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> rad(0.0, 1.0), ang(0.0, 2 * kPi), amod(0.3, 3.0);
  std::uniform_int_distribution<int> deg(2, 3);
  const int d = deg(rng);
  std::vector<cd> c(d + 1);
  for (auto& x : c) x = std::polar(rad(rng), ang(rng));
  if (std::abs(c.back()) < 0.2) c.back() = std::polar(0.5, ang(rng));
  return HenonMap::single(Poly(c), std::polar(amod(rng), ang(rng)));
}

}  // namespace

TEST(FixedPointsExact, Examples) {
  const auto two = fixed_points_exact(HenonMap::single(Poly::monomial(2), 2.0));
  ASSERT_EQ(two.size(), 2u);
  EXPECT_LT((two[0].point - Point(-1.0, -1.0)).norm(), 1e-14);
  EXPECT_LT(two[1].point.norm(), 1e-14);
  // multipliers at (-1, -1): roots of l^2 + 2 l - 2
  const double s = std::sqrt(3.0);
  EXPECT_NEAR(std::abs(two[0].mult1 - cd(-1.0 + s)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(two[0].mult2 - cd(-1.0 - s)), 0.0, 1e-12);
  EXPECT_EQ(two[0].kind, PointKind::Saddle);

  const auto double_root = fixed_points_exact(HenonMap::single(Poly::monomial(2), 1.0));
  ASSERT_EQ(double_root.size(), 2u);
  for (const auto& p : double_root) EXPECT_LT(p.point.norm(), 1e-7);
  EXPECT_THROW(fixed_points_exact(HenonMap::quadratic(0.0, 1.0).iterate(2)), std::invalid_argument);
}

TEST(PeriodicPoints, FixedPointsMatchElimination) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    const HenonMap f = random_map(rng);
    const auto exact = fixed_points_exact(f);
    const auto found = periodic_points(f, 1);
    ASSERT_EQ(found.points.size(), exact.size());
    for (const auto& p : exact) EXPECT_TRUE(contains(found.points, p.point, 1e-9));
  }
}

TEST(PeriodicPoints, PeriodTwoClosedForm) {
  // p = z^2, a = 0.4: z2 = z1^2 / 0.6 and z2^2 = 0.6 z1, so z1 = 0 or z1^3 = 0.216
  const HenonMap f = HenonMap::single(Poly::monomial(2), 0.4);
  const auto found = periodic_points(f, 2);
  EXPECT_TRUE(found.complete);
  ASSERT_EQ(found.points.size(), 4u);
  EXPECT_TRUE(contains(found.points, Point(0.0, 0.0), 1e-9));
  for (int k = 0; k < 3; ++k) {
    const cd w = std::polar(1.0, 2 * kPi * k / 3);
    EXPECT_TRUE(contains(found.points, Point(0.6 * w, 0.6 * w * w), 1e-9));
  }
  const auto exact = period_two_exact(f);
  ASSERT_EQ(exact.size(), 4u);
  for (const auto& p : exact) EXPECT_TRUE(contains(found.points, p.point, 1e-9));
}

TEST(PeriodicPoints, SetIsInvariantAndNested) {
  const HenonMap f = HenonMap::quadratic(cd(-0.4, 0.3), cd(0.5, 0.2));
  const auto two = periodic_points(f, 2);
  const auto one = periodic_points(f, 1);
  EXPECT_TRUE(two.complete);
  for (const auto& p : two.points) EXPECT_TRUE(contains(two.points, henon::apply(f, p.point), 1e-8));
  for (const auto& p : one.points) EXPECT_TRUE(contains(two.points, p.point, 1e-8));
}

TEST(PeriodicPoints, CountLawOnRandomMaps) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const HenonMap f = random_map(rng);
    for (int n : {1, 2}) {
      const auto s = periodic_points(f, n);
      const cd detn = std::pow(f.jacobian_det(), n);
      if (!s.degenerate) EXPECT_TRUE(s.complete) << format_map(f) << " n=" << n;
      for (const auto& p : s.points) {
        EXPECT_LE(p.residual, 1e-10 * (1.0 + p.point.norm()));
        EXPECT_LT(std::abs(p.mult1 * p.mult2 - detn), 1e-8 * std::abs(detn));
      }
    }
  }
}

TEST(PeriodicPoints, PointsLieInK) {
  const HenonMap f = HenonMap::quadratic(-1.1, 0.4);
  const auto s = periodic_points(f, 3);
  EXPECT_TRUE(s.complete);
  for (const auto& p : s.points) {
    const auto c = classify(f, p.point, 16);
    EXPECT_FALSE(c.forward.escaping());
    EXPECT_FALSE(c.backward.escaping());
  }
}

TEST(PeriodicPoints, RejectsBadArguments) {
  EXPECT_THROW(periodic_points(HenonMap::quadratic(0.0, 1.0), 0), std::invalid_argument);
  EXPECT_THROW(periodic_points(HenonMap::quadratic(0.0, 1.0), 13), std::invalid_argument);
}

TEST(SaddleMeasure, NormalizationAndSupport) {
  const HenonMap f = HenonMap::quadratic(-3.0, 0.2);
  const auto s = periodic_points(f, 2);
  ASSERT_TRUE(s.complete);
  const double all = saddle_measure(s, [](const Point&) { return 1.0; });
  EXPECT_GE(all, 0.0);
  EXPECT_LE(all, 1.0);
  EXPECT_DOUBLE_EQ(all, 1.0);  // horseshoe: every periodic point is a saddle
  EXPECT_EQ(saddle_measure(s, [](const Point& z) { return z.norm() > 100.0 ? 1.0 : 0.0; }), 0.0);
}

TEST(SaddleMeasure, StableAcrossPeriods) {
  const HenonMap f = HenonMap::quadratic(-3.0, 0.2);
  const auto bump = [](const Point& z) {
    const double t = std::norm(z(0) - 1.0) / 4.0 + std::norm(z(1) - 1.0) / 4.0;
    return t < 1.0 ? (1 - t) * (1 - t) * (1 - t) : 0.0;
  };
  const double m3 = saddle_measure(f, 3, bump), m4 = saddle_measure(f, 4, bump, SeedBox{0.0, 10});
  EXPECT_LT(std::abs(m3 - m4), 0.2);
}
