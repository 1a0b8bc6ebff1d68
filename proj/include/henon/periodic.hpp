#pragma once

#include "henon/map.hpp"

#include <functional>
#include <string_view>
#include <vector>

namespace henon {

enum class PointKind { Attracting, Repelling, Saddle, Neutral };
std::string_view to_string(PointKind k);

inline constexpr double kNeutralTolerance = 1e-9;

struct PeriodicPoint {
  Point point;
  int period = 1;
  /// Eigenvalues of D(f^n) at the point, ordered by modulus.
  cd mult1;
  cd mult2;
  double residual = 0.0;
  PointKind kind = PointKind::Neutral;
};

/// Multipliers, residual and kind of a solution of f^n(z) = z.
PeriodicPoint make_periodic_point(const HenonMap& f, const Point& z, int n);

/// Roots of p(z) + (a - 1) z on the diagonal z2 = z1, with multiplicity.
/// Throws std::invalid_argument unless f has exactly one factor.
std::vector<PeriodicPoint> fixed_points_exact(const HenonMap& f);

/// Solutions of f^2(z) = z for a single factor, by elimination:
/// z2 = p(z1) / (1 - a) and p(z2) = (1 - a) z1 (or p(z1) = p(z2) = 0 when a = 1).
std::vector<PeriodicPoint> period_two_exact(const HenonMap& f);

struct SeedBox {
  /// Half-width of [-r, r]^4; 0 means max(escape radius, backward radius).
  double half_width = 0.0;
  int seeds_per_axis = 8;
};

struct PeriodicSearch {
  std::vector<PeriodicPoint> points;
  int expected = 0;
  /// Found exactly d^n distinct verified solutions.
  bool complete = false;
  /// Some solution has a multiplier within 1e-6 of 1, where Newton cannot
  /// separate colliding roots.
  bool degenerate = false;
};

/// Damped Newton on f^n(z) - z from a seed grid; solutions are verified
/// (residual <= 1e-10 (1 + |z|)), deduplicated at distance 1e-7 and sorted
/// lexicographically by (Re z1, Re z2, Im z1, Im z2).
/// Throws std::invalid_argument for n < 1 or d^n > 4096.
PeriodicSearch periodic_points(const HenonMap& f, int n, const SeedBox& box = {});

/// Sum over saddle points of bump(point) / (number of period-n points).
double saddle_measure(const PeriodicSearch& search, const std::function<double(const Point&)>& bump);
/// Runs the search first; throws NumericalError if it is not complete.
double saddle_measure(const HenonMap& f, int n, const std::function<double(const Point&)>& bump,
                      const SeedBox& box = {});

}  // namespace henon
