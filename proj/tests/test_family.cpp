#include "henon/family.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace henon;

namespace {

// Independent oracle: orbit of 0 under z -> z^2 + c stays in |z| <= 2 for n steps.
bool mandelbrot_bounded(cd c, int n) {
  cd z = 0.0;
  for (int k = 0; k < n; ++k) {
    z = z * z + c;
    if (std::abs(z) > 2.0) return false;
  }
  return true;
}

std::vector<std::uint8_t> boundary_mask(const Grid<GreenValue>& g) {
  std::vector<std::uint8_t> m(g.data.size(), 0);
  for (int j = 1; j + 1 < g.height; ++j)
    for (int i = 1; i + 1 < g.width; ++i) {
      if (g.at(i, j).value != 0.0) continue;
      if (g.at(i + 1, j).value > 0.0 || g.at(i - 1, j).value > 0.0 || g.at(i, j + 1).value > 0.0 ||
          g.at(i, j - 1).value > 0.0)
        m[static_cast<std::size_t>(j) * g.width + i] = 1;
    }
  return m;
}

}  // namespace

TEST(Family, FixedPointAtOrigin) {
  const GreenValue g = family_green(Family::quadratic(), Point(0.0, 0.3), Point(0.0, 0.0), 1e-10);
  EXPECT_EQ(g.value, 0.0);
}

TEST(Family, FiberConsistencyIsBitExact) {
  const Family fam = Family::quadratic();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 200; ++k) {
    const Point c(cd(u(rng), u(rng)), cd(0.1 + 0.2 * std::abs(u(rng)), 0.0));
    const Point z(cd(u(rng), u(rng)), cd(u(rng), u(rng)));
    const GreenValue a = family_green(fam, c, z, 1e-10), b = green_plus(HenonMap::quadratic(c(0), c(1)), z, 1e-10);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.error_bound, b.error_bound);
  }
}

TEST(Family, RejectsDegreeChange) {
  const Family bad([](const Point& c) { return c(0) == cd(0.0) ? HenonMap::quadratic(0.0, 1.0)
                                                                : HenonMap::single(Poly::monomial(3), 1.0); },
                   2, "bad");
  EXPECT_NO_THROW(bad(Point(0.0, 0.0)));
  EXPECT_THROW(bad(Point(1.0, 0.0)), std::invalid_argument);
  EXPECT_THROW(Family([](const Point&) { return HenonMap::quadratic(0.0, 1.0); }, 1, "x"), std::invalid_argument);
}

TEST(Family, ContinuityInTheParameter) {
  const Family fam = Family::quadratic();
  const Point z(cd(1.5, 0.2), cd(-0.4, 0.1));
  const GreenValue g0 = family_green(fam, Point(-1.1, 0.4), z, 1e-12);
  ASSERT_GT(g0.value, 0.0);
  for (cd dc : {cd(1e-4, 0.0), cd(0.0, 1e-4), cd(-1e-4, 0.0)}) {
    const GreenValue g1 = family_green(fam, Point(-1.1 + dc, 0.4), z, 1e-12);
    EXPECT_LT(std::abs(g1.value - g0.value), 1e-3);
  }
}

TEST(Family, VanishesOnBoundedFibers) {
  const Family fam = Family::quadratic();
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int bounded = 0;
  for (int k = 0; k < 400; ++k) {
    const Point c(cd(-0.1 + 0.2 * u(rng), 0.1 * u(rng)), cd(0.2, 0.0));
    const Point z(cd(u(rng), u(rng)), cd(u(rng), u(rng)));
    const HenonMap f = fam(c);
    if (classify_forward(f, z, 512).escaping()) {
      EXPECT_GT(family_green(fam, c, z, 1e-10).value, 0.0);
    } else {
      ++bounded;
      EXPECT_EQ(family_green(fam, c, z, 1e-10, 512).value, 0.0);
    }
  }
  EXPECT_GT(bounded, 0);
}

TEST(ParamScan, EscapingBasePointIsPositiveEverywhere) {
  const ParamScan s = param_scan(Family::quadratic_fixed_a(0.3), Point(50.0, 1.0), ComplexLine(Point(0.0, 0.0), Point(1.0, 0.0)),
                                 Rect::centered(0.0, 1.0), 17, 17, 1e-10);
  for (const GreenValue& g : s.green.data) EXPECT_GT(g.value, 0.0);
  for (const OrbitTag& t : s.forward.data) EXPECT_TRUE(t.escaping());
}

TEST(ParamScan, SmallJacobianApproachesTheMandelbrotSet) {
  const int n = 65;
  const Rect window{-2.0, 0.5, -1.25, 1.25};
  const ParamScan s = param_scan(Family::quadratic_fixed_a(1e-3), Point(0.0, 0.0),
                                 ComplexLine(Point(0.0, 0.0), Point(1.0, 0.0)), window, n, n, 1e-10, 256);
  int zeros = 0, agree = 0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const bool zero = s.green.at(i, j).value == 0.0;
      zeros += zero;
      agree += zero == mandelbrot_bounded(s.green.node(i, j), 256);
      // an escaping orbit may still report 0 when its certified bound is below tol
      if (!s.forward.at(i, j).escaping()) EXPECT_TRUE(zero);
      if (zero) EXPECT_LE(s.green.at(i, j).error_bound, 1e-10);
    }
  EXPECT_GT(zeros, n * n / 10);
  EXPECT_GT(agree, 0.97 * n * n);
}

TEST(ParamScan, RefinementSharesNodes) {
  const Family fam = Family::quadratic_fixed_a(0.2);
  const ComplexLine line(Point(0.0, 0.0), Point(1.0, 0.0));
  const Rect w = Rect::centered(cd(-0.5, 0.0), 1.5);
  const ParamScan a = param_scan(fam, Point(0.1, 0.0), line, w, 9, 9, 1e-10);
  const ParamScan b = param_scan(fam, Point(0.1, 0.0), line, w, 17, 17, 1e-10);
  for (int j = 0; j < 9; ++j)
    for (int i = 0; i < 9; ++i) EXPECT_EQ(a.green.at(i, j).value, b.green.at(2 * i, 2 * j).value);
}

TEST(Family, JointHolderModulusIsBounded) {
  const HenonMap f0 = HenonMap::quadratic(-1.1, 0.4);
  const double beta = holder_exponent(f0, {}, {8}).front().beta_hat;
  ASSERT_GT(beta, 0.0);
  const Family fam = Family::quadratic();
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0), ls(-6.0, -2.0);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    Eigen::Vector4cd p(cd(-1.1 + 0.1 * u(rng), 0.1 * u(rng)), cd(0.4 + 0.05 * u(rng), 0.0), cd(1.5 * u(rng), 1.5 * u(rng)),
                       cd(1.5 * u(rng), 1.5 * u(rng)));
    Eigen::Vector4cd d(cd(u(rng), u(rng)), cd(u(rng), 0.0), cd(u(rng), u(rng)), cd(u(rng), u(rng)));
    d *= std::pow(10.0, ls(rng)) / d.norm();
    const Eigen::Vector4cd q = p + d;
    const double g1 = family_green(fam, Point(p(0), p(1)), Point(p(2), p(3)), 1e-12).value;
    const double g2 = family_green(fam, Point(q(0), q(1)), Point(q(2), q(3)), 1e-12).value;
    worst = std::max(worst, std::abs(g1 - g2) / std::pow(d.norm(), beta));
  }
  EXPECT_LT(worst, 100.0);
}

TEST(Family, BoundaryPersistsUnderParameterPerturbation) {
  const Family fam = Family::quadratic();
  const Rect w = Rect::centered(0.0, 2.0);
  const int n = 129;
  const double pixel = w.width() / (n - 1);
  const ComplexLine line = ComplexLine::horizontal(0.0);
  // attracting fixed point, so K+ has interior and a visible boundary
  const Grid<GreenValue> g0 = render_green(fam(Point(-0.1, 0.2)), line, w, n, n, 1e-8, 512);
  const Grid<GreenValue> g1 = render_green(fam(Point(cd(-0.1 + pixel, 0.0), 0.2)), line, w, n, n, 1e-8, 512);
  const auto b0 = boundary_mask(g0), b1 = boundary_mask(g1);
  int detected = 0, matched = 0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (!b0[static_cast<std::size_t>(j) * n + i]) continue;
      ++detected;
      bool near = false;
      for (int dj = -2; dj <= 2 && !near; ++dj)
        for (int di = -2; di <= 2 && !near; ++di) {
          const int x = i + di, y = j + dj;
          near = x >= 0 && y >= 0 && x < n && y < n && b1[static_cast<std::size_t>(y) * n + x];
        }
      matched += near;
    }
  ASSERT_GT(detected, 50);
  EXPECT_EQ(matched, detected);
}
