#include "henon/currents.hpp"
#include "henon/green.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace henon;

namespace {

// 2 * integral of chi(0, z2) over the z2-plane by a polar rule: the slice of
// [z1 = 0] paired with chi beta.
double direct_slice_integral(const TestForm& psi, int radial, int angular) {
  double s = 0.0;
  const double dr = psi.rho / radial, da = 2.0 * kPi / angular;
  for (int i = 0; i < radial; ++i) {
    const double r = (i + 0.5) * dr;
    for (int k = 0; k < angular; ++k) {
      const cd z2 = psi.center(1) + std::polar(r, (k + 0.5) * da);
      s += psi.chi(Point(0.0, z2)) * r * dr * da;
    }
  }
  return 2.0 * s;
}

}  // namespace

TEST(Slice, PoincareLelongAtomOnNode) {
  // odd resolution: t = 0 is a cell center
  const auto m = slice(log_abs_z1(), ComplexLine::horizontal(0.3), Rect{-1, 1, -1, 1}, 65);
  EXPECT_EQ(m.pole_count(), 1);
  EXPECT_TRUE(m.pole[32 * 65 + 32]);
  EXPECT_NEAR(m.mass(32, 32), 1.0, 0.02);
  EXPECT_NEAR(m.total_mass, 1.0, 1e-3);
}

TEST(Slice, PoincareLelongAtomBetweenNodes) {
  double previous = 1.0;
  for (int n : {32, 64, 128}) {
    const auto m = slice(log_abs_z1(), ComplexLine::horizontal(0.3), Rect{-1, 1, -1, 1}, n);
    EXPECT_EQ(m.pole_count(), 0);
    const double err = std::abs(m.total_mass - 1.0);
    EXPECT_LT(err, previous);
    previous = err;
    const double near_zero = m.mass(n / 2, n / 2) + m.mass(n / 2 - 1, n / 2) + m.mass(n / 2, n / 2 - 1) +
                             m.mass(n / 2 - 1, n / 2 - 1);
    EXPECT_NEAR(near_zero, 1.0, 0.05);
  }
  EXPECT_LT(previous, 1e-3);
}

TEST(Slice, HarmonicPotentialHasNoMass) {
  const PotentialField u{[](const Point& z) { return (z(0) * z(0)).real() + std::log(std::abs(z(0) - 5.0)); }, "harmonic"};
  const auto m = slice(u, ComplexLine::horizontal(0.0), Rect{-1, 1, -1, 1}, 64);
  for (double c : m.cell_mass) EXPECT_LT(std::abs(c), 1e-6);
  EXPECT_LT(std::abs(m.total_mass), 1e-6);
}

TEST(Slice, CellMassesSumToTotal) {
  const auto m = slice(log_sup_norm(), ComplexLine({0.1, 0.2}, {1.0, cd(0.3, 0.1)}), Rect{-2, 2, -1.5, 1.5}, 50);
  double s = 0.0;
  for (double c : m.cell_mass) s += c;
  EXPECT_EQ(s, m.total_mass);
}

TEST(Slice, PositivityImprovesWithResolution) {
  double previous = -1.0;
  for (int n : {64, 128, 256}) {
    const auto m = slice(log_sup_norm(), ComplexLine::horizontal(0.3), Rect{-3, 3, -3, 3}, n);
    EXPECT_LE(m.negative_mass, 0.0);
    EXPECT_GT(m.negative_mass, previous / 3.0);
    previous = m.negative_mass;
  }
}

TEST(Slice, GreenPositivityAfterCoarsening) {
  // Per cell, the stencil error of G+ near J+ is scale invariant; on blocks of
  // fixed physical size it vanishes.
  const HenonMap f = HenonMap::quadratic(-1.1, 0.4);
  double previous = -1.0;
  for (int n : {128, 256, 512}) {
    const auto m = coarsen(slice(green_potential(f), ComplexLine::horizontal(0.0), Rect{-3, 3, -3, 3}, n), n / 32);
    EXPECT_EQ(m.resolution, 32);
    EXPECT_GT(m.negative_mass, previous / 1.5);
    previous = m.negative_mass;
  }
  EXPECT_GT(previous, -5e-3);
}

TEST(Slice, CoarsenKeepsTotal) {
  const auto m = slice(log_abs_z1(), ComplexLine::horizontal(0.3), Rect{-1, 1, -1, 1}, 65);
  const auto c = coarsen(m, 5);
  EXPECT_EQ(c.resolution, 13);
  EXPECT_NEAR(c.total_mass, m.total_mass, 1e-12);
  EXPECT_EQ(c.pole_count(), 1);
  EXPECT_THROW(coarsen(m, 2), std::invalid_argument);
}

TEST(Slice, GreenCurrentHasUnitSliceMass) {
  const HenonMap f = HenonMap::quadratic(-1.1, 0.4);
  const auto m = slice(green_potential(f), ComplexLine::horizontal(0.0), Rect{-3, 3, -3, 3}, 256);
  EXPECT_NEAR(m.total_mass, 1.0, 0.03);
}

TEST(Slice, RefinementWithinErrorEstimate) {
  const HenonMap f = HenonMap::quadratic(-1.1, 0.4);
  for (const PotentialField& u : {log_abs_z1(), green_potential(f)}) {
    const auto a = slice(u, ComplexLine::horizontal(0.3), Rect{-3, 3, -3, 3}, 64);
    const auto b = slice(u, ComplexLine::horizontal(0.3), Rect{-3, 3, -3, 3}, 128);
    EXPECT_LT(std::abs(b.total_mass - a.total_mass), a.error_estimate) << u.label;
  }
}

TEST(Slice, RejectsBadInput) {
  EXPECT_THROW(slice(log_abs_z1(), ComplexLine::horizontal(0.0), Rect{}, 0), std::invalid_argument);
  EXPECT_THROW(slice(log_abs_z1(), ComplexLine::horizontal(0.0), Rect{0, 0, 0, 1}, 8), std::invalid_argument);
  EXPECT_THROW(ComplexLine(Point(0.0, 0.0), Point(0.0, 0.0)), std::invalid_argument);
  EXPECT_TRUE(ComplexLine(Point(0.0, 0.0), Point(0.0, 2.0)).through_i_plus());
  EXPECT_FALSE(ComplexLine::horizontal(1.0).through_i_plus());
}

TEST(PairSlice, ConstantAndAtom) {
  const auto m = slice(log_abs_z1(), ComplexLine::horizontal(0.3), Rect{-1, 1, -1, 1}, 65);
  EXPECT_EQ(pair_slice(m, [](cd) { return 1.0; }), m.total_mass);
  const auto smooth = [](cd t) { return std::exp(-std::norm(t - cd(0.1, 0.0))); };
  EXPECT_NEAR(pair_slice(m, smooth), smooth(0.0), 0.02);
  const auto again = slice(log_abs_z1(), ComplexLine::horizontal(0.3), Rect{-1, 1, -1, 1}, 65);
  EXPECT_EQ(pair_slice(again, smooth), pair_slice(m, smooth));
}

TEST(TestForm, BumpAndLaplacianClosedForms) {
  const TestForm psi(Point(cd(0.2, -0.1), cd(-0.3, 0.4)), 0.7);
  EXPECT_EQ(psi.chi(psi.center), 1.0);
  EXPECT_EQ(psi.chi(psi.center + Point(0.7, 0.0)), 0.0);
  const double h = 1e-4;
  for (const cd off : {cd(0.1, 0.2), cd(-0.3, 0.1), cd(0.05, -0.4)}) {
    const Point z = psi.center + Point(off, 0.5 * off);
    auto lap = [&](int k) {
      Point e1 = Point::Zero(), e2 = Point::Zero();
      e1(k) = h;
      e2(k) = cd(0.0, h);
      return (psi.chi(z + e1) + psi.chi(z - e1) + psi.chi(z + e2) + psi.chi(z - e2) - 4 * psi.chi(z)) / (h * h);
    };
    EXPECT_NEAR(psi.laplacian_z1(z), lap(0), 1e-5);
    EXPECT_NEAR(psi.laplacian_z2(z), lap(1), 1e-5);
  }
  EXPECT_THROW(TestForm(Point(0.0, 0.0), 0.0), std::invalid_argument);
}

TEST(TestForm, C2NormMatchesFiniteDifferences) {
  const TestForm psi(Point(0.0, 0.0), 0.8);
  double best = 1.0;
  const double h = 1e-4;
  for (int i = 0; i <= 400; ++i) {
    const double x = 0.8 * i / 400.0;
    auto g = [&](double s) { return psi.chi(Point(s, 0.0)); };
    best = std::max({best, std::abs(g(x + h) - g(x - h)) / (2 * h), std::abs(g(x + h) + g(x - h) - 2 * g(x)) / (h * h)});
  }
  EXPECT_NEAR(psi.c2_norm(), best, 1e-3 * best);
}

TEST(PairForm, HarmonicPotentialPairsToZero) {
  const PotentialField u{[](const Point& z) { return (z(0) * z(1)).real() + std::log(std::abs(z(1) - 4.0)); }, "pluriharmonic"};
  const TestForm psi(Point(0.0, 0.0), 1.0);
  const double coarse = pair_form(u, psi, 24), fine = pair_form(u, psi, 48);
  EXPECT_LT(std::abs(fine), 2e-3);
  EXPECT_LT(std::abs(fine), std::abs(coarse) / 3.0);
}

TEST(PairForm, PoincareLelongCalibration) {
  const TestForm psi(Point(0.0, 0.0), 1.0);
  const double oracle = direct_slice_integral(psi, 2000, 2000);
  EXPECT_NEAR(oracle, kPi / 2.0, 1e-5);
  EXPECT_NEAR(pair_form(log_abs_z1(), psi, 48) / oracle, 1.0, 0.01);
}

TEST(PairForm, Linearity) {
  const TestForm psi(Point(cd(0.1, 0.0), cd(0.0, -0.2)), 0.9);
  const PotentialField a = log_sup_norm(), b = log_abs_z1();
  const PotentialField sum{[&](const Point& z) { return a(z) + b(z); }, "sum"};
  EXPECT_NEAR(pair_form(sum, psi, 16), pair_form(a, psi, 16) + pair_form(b, psi, 16), 1e-10);
  EXPECT_THROW(pair_form(a, psi, 7), std::invalid_argument);
}
