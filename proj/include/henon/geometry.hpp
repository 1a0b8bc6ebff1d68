#pragma once

#include "henon/numerics.hpp"

#include <stdexcept>
#include <vector>

namespace henon {

/// Axis-aligned rectangle [x0, x1] x [y0, y1] in a complex parameter plane.
struct Rect {
  double x0 = -1.0, x1 = 1.0, y0 = -1.0, y1 = 1.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  bool degenerate() const { return !(x1 > x0) || !(y1 > y0); }
  static Rect centered(cd c, double half_width) {
    return {c.real() - half_width, c.real() + half_width, c.imag() - half_width, c.imag() + half_width};
  }
};

/// Complex line l(t) = base + t * direction in C^2.
struct ComplexLine {
  Point base = Point(0.0, 0.0);
  Point direction = Point(1.0, 0.0);

  ComplexLine() = default;
  ComplexLine(Point b, Point d) : base(std::move(b)), direction(std::move(d)) {
    if (direction.squaredNorm() == 0.0) throw std::invalid_argument("ComplexLine direction must be nonzero");
  }
  /// The horizontal line {z2 = c}, parametrized by t = z1. Passes through I-.
  static ComplexLine horizontal(cd c) { return {Point(0.0, c), Point(1.0, 0.0)}; }

  Point at(cd t) const { return base + t * direction; }
  /// Lines whose direction is proportional to (0, 1) pass through I+.
  bool through_i_plus() const { return direction(0) == cd(0.0); }
};

/// Row-major sample grid over a rectangle. Row 0 is the top edge (y1); node
/// (i, j) sits at x0 + i * dx, y1 - j * dy with spacing (x1 - x0) / (width - 1),
/// so the nodes of a (w, h) grid are shared by the (2w - 1, 2h - 1) grid.
template <class T>
struct Grid {
  Rect window;
  int width = 0;
  int height = 0;
  std::vector<T> data;

  Grid() = default;
  Grid(Rect w, int nx, int ny) : window(w), width(nx), height(ny), data(static_cast<std::size_t>(nx) * ny) {
    if (nx <= 0 || ny <= 0) throw std::invalid_argument("grid resolution must be positive");
    if (w.degenerate()) throw std::invalid_argument("grid window is degenerate");
  }

  T& at(int i, int j) { return data[static_cast<std::size_t>(j) * width + i]; }
  const T& at(int i, int j) const { return data[static_cast<std::size_t>(j) * width + i]; }

  cd node(int i, int j) const {
    const double fx = width > 1 ? static_cast<double>(i) / (width - 1) : 0.5;
    const double fy = height > 1 ? static_cast<double>(j) / (height - 1) : 0.5;
    return {window.x0 + fx * window.width(), window.y1 - fy * window.height()};
  }
};

}  // namespace henon
