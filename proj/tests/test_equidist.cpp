#include "henon/equidist.hpp"
#include "henon/green.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace henon;

TEST(Curve, ChecksIndeterminacy) {
  EXPECT_THROW(Curve({{0, 1, 1.0}}), std::invalid_argument);  // {z2 = 0} passes through I-
  EXPECT_THROW(Curve({{0, 0, 2.0}}), std::invalid_argument);
  EXPECT_THROW(Curve({{1, 0, 1.0}, {1, 0, -1.0}}), std::invalid_argument);
  const Curve c({{2, 0, 1.0}, {0, 1, -1.0}, {1, 1, 0.5}});
  EXPECT_EQ(c.degree(), 2);
  EXPECT_EQ(Curve::z1_axis().degree(), 1);
}

TEST(Curve, ExtendedEvaluationMatchesDouble) {
  const Curve c({{2, 0, cd(1.0, 0.5)}, {0, 1, -1.0}, {0, 0, 0.25}});
  const Point z(cd(1.5, -0.25), cd(0.75, 2.0));
  EXPECT_NEAR(c.log_abs(ExtPoint(z)), std::log(std::abs(c(z))), 1e-13);
  const ExtPoint huge(ExtComplex(cd(1.0), 3000), ExtComplex(cd(1.0), 10));
  EXPECT_NEAR(c.log_abs(huge), std::log(std::abs(cd(1.0, 0.5))) + 6000 * kLn2, 1e-9);
}

TEST(Pullback, IdentityIterate) {
  const Curve c({{2, 0, 1.0}, {0, 1, -1.0}});
  const PotentialField u = pullback_potential(HenonMap::quadratic(-1.1, 0.4), c, 0);
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> x(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const Point z(cd(x(rng), x(rng)), cd(x(rng), x(rng)));
    EXPECT_NEAR(u(z), 0.5 * std::log(std::abs(z(0) * z(0) - z(1))), 1e-12);
  }
}

TEST(Pullback, OneStepByHand) {
  const PotentialField u = pullback_potential(HenonMap::single(Poly::monomial(2), 1.0), Curve::z1_axis(), 1);
  const Point z(cd(0.7, -0.2), cd(1.3, 0.4));
  EXPECT_NEAR(u(z), 0.5 * std::log(std::abs(z(0) * z(0) + z(1))), 1e-14);
  EXPECT_THROW(pullback_potential(HenonMap::quadratic(0.0, 1.0), Curve::z1_axis(), -1), std::invalid_argument);
}

TEST(Pullback, DeepIterateConvergesToGreen) {
  const HenonMap f = HenonMap::quadratic(-1.1, 0.4);
  const PotentialField u = pullback_potential(f, Curve::z1_axis(), 20);
  const Point z(cd(2.5, 1.0), cd(-0.5, 0.3));
  EXPECT_NEAR(u(z), green_plus(f, z, 1e-12).value, 1e-5);
}

TEST(Pullback, SliceMassIsOne) {
  const HenonMap f = HenonMap::quadratic(-1.1, 0.4);
  for (int n = 0; n <= 4; ++n) {
    const auto m = slice(pullback_potential(f, Curve::z1_axis(), n), ComplexLine::horizontal(0.0), Rect{-4, 4, -4, 4}, 256);
    EXPECT_NEAR(m.total_mass, 1.0, 0.03) << n;
  }
}

TEST(DefaultForms, CentersSitOnTheEscapeBoundary) {
  const HenonMap f = HenonMap::quadratic(-1.1, 0.4);
  const auto forms = default_test_forms(f);
  ASSERT_EQ(forms.size(), 3u);
  for (const auto& psi : forms) {
    EXPECT_EQ(psi.rho, 0.8);
    EXPECT_FALSE(classify_forward(f, psi.center, 8).escaping());
  }
}

TEST(Equidist, RawCurveIsNotTheGreenCurrent) {
  const HenonMap f = HenonMap::quadratic(-1.1, 0.4);
  const auto r = equidist_experiment(f, Curve::z1_axis(), default_test_forms(f), {0}, {16});
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_GT(r.errors[0], 1e-3);
  EXPECT_TRUE(r.saturated);
}

TEST(Equidist, RateIsLogDWhenKPlusHasInterior) {
  // attracting fixed point: on its basin u_n - G+ tends to a nonzero constant
  // times d^{-n}, so the decay is exactly d^{-n}
  const HenonMap f = HenonMap::quadratic(-0.1, 0.2);
  std::vector<int> ns;
  for (int n = 0; n <= 12; ++n) ns.push_back(n);
  const auto r = equidist_experiment(f, Curve::z1_axis(), default_test_forms(f), ns, {16});
  EXPECT_FALSE(r.saturated);
  EXPECT_NEAR(r.fitted_rate / std::log(2.0), 1.0, 0.15);
  for (int k = r.first_used + 1; k <= r.last_used; ++k) EXPECT_LT(r.errors[k], r.errors[k - 1]);
  for (int k = r.first_used; k <= r.last_used; ++k) EXPECT_LE(r.errors[k], r.bound_model[k] * (1 + 1e-12));
}
