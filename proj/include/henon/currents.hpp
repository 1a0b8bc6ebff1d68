#pragma once

#include "henon/geometry.hpp"
#include "henon/map.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace henon {

/// Local potential u of a positive closed (1,1)-current S = dd^c u.
struct PotentialField {
  std::function<double(const Point&)> evaluate;
  std::string label;

  double operator()(const Point& z) const { return evaluate(z); }
};

PotentialField green_potential(const HenonMap& f, double tol = 1e-10);
/// u = log|z1|: dd^c u is the current of integration on {z1 = 0}.
PotentialField log_abs_z1();
/// u = log max(|z1|, |z2|).
PotentialField log_sup_norm();

/// Discretized measure dd^c(u o l) on an N x N cell-centered grid in the
/// t-plane. Mass is (five-point Laplacian) / (2 pi) per cell.
struct SliceMeasure {
  Rect window;
  int resolution = 0;
  /// Row-major, row j = 0 at the bottom edge y0.
  std::vector<double> cell_mass;
  /// Cells whose center is a pole of u; their mass uses the matched
  /// logarithmic correction.
  std::vector<std::uint8_t> pole;
  double total_mass = 0.0;
  /// |second order flux - fourth order flux| through the window boundary.
  double error_estimate = 0.0;
  /// Sum of negative masses over non-pole cells.
  double negative_mass = 0.0;

  double hx() const { return window.width() / resolution; }
  double hy() const { return window.height() / resolution; }
  cd cell_center(int i, int j) const {
    return {window.x0 + (i + 0.5) * hx(), window.y0 + (j + 0.5) * hy()};
  }
  double mass(int i, int j) const { return cell_mass[static_cast<std::size_t>(j) * resolution + i]; }
  int pole_count() const;
};

/// Throws std::invalid_argument for resolution < 2 or a degenerate window.
SliceMeasure slice(const PotentialField& u, const ComplexLine& line, const Rect& window, int resolution);

/// Sums factor x factor blocks of cells; a block is a pole block if any of
/// its cells is. Throws std::invalid_argument unless factor divides the
/// resolution.
SliceMeasure coarsen(const SliceMeasure& m, int factor);

/// Sum of cell_mass * chi(cell center).
double pair_slice(const SliceMeasure& m, const std::function<double(cd)>& chi);

/// chi(z) = B(|z1 - c1|^2 / rho^2) B(|z2 - c2|^2 / rho^2), B(t) = (1 - t)^3 on
/// [0, 1] and 0 beyond; paired as psi = chi (i dz1 ^ dz1bar + i dz2 ^ dz2bar).
struct TestForm {
  Point center = Point(0.0, 0.0);
  double rho = 1.0;

  TestForm() = default;
  TestForm(Point c, double r);

  double chi(const Point& z) const;
  /// Real Laplacian of chi in the z1-plane and in the z2-plane.
  double laplacian_z1(const Point& z) const;
  double laplacian_z2(const Point& z) const;
  /// max over z of the largest |chi|, |first| or |second| real derivative.
  double c2_norm() const;
};

/// One-variable profile B(|t - c|^2 / rho^2) and its planar Laplacian.
double bump(double t);
double bump_laplacian(double t, double rho);

/// <dd^c u, psi> = (1/pi) int u (Lap_z1 chi + Lap_z2 chi) dV, tensor-product
/// midpoint rule with `per_axis` nodes on each of the four real axes of the
/// support box. Throws std::invalid_argument for per_axis < 8.
double pair_form(const PotentialField& u, const TestForm& psi, int per_axis);

/// The 1/pi in pair_form, checked against the Poincare-Lelong calibration.
inline constexpr double kPairFormConstant = 1.0 / kPi;

}  // namespace henon
