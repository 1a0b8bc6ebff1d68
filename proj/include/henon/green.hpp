#pragma once

#include "henon/geometry.hpp"
#include "henon/map.hpp"

#include <optional>
#include <vector>

namespace henon {

inline constexpr int kDefaultBudget = 2048;

/// G+(z) (or G-) with a certified bound |value - G| <= error_bound.
struct GreenValue {
  double value = 0.0;
  int iterations = 0;
  double error_bound = 0.0;
  /// Map iterate at which the escape certificate first fired.
  std::optional<int> escaped_at;
};

struct OrbitTag {
  enum class Kind { Escaping, BoundedWithinBudget };
  Kind kind = Kind::BoundedWithinBudget;
  /// Escape iterate, or the budget used.
  int n = 0;

  bool escaping() const { return kind == Kind::Escaping; }
  friend bool operator==(const OrbitTag&, const OrbitTag&) = default;
};

struct PointClass {
  OrbitTag forward;
  OrbitTag backward;
};

/// Green function of f. Iterates with the per-factor escape certificate; once
/// it fires, the remaining tail is summed in closed form (leading-coefficient
/// correction) and bounded by a geometric series. Points that do not escape
/// return 0 with the bound d^{-n} (log+ |f^n z| + tail). Stops as soon as the
/// bound is <= tol or `budget` map iterations are spent.
/// Throws std::invalid_argument for tol <= 0.
GreenValue green_plus(const HenonMap& f, const Point& z, double tol, int budget = kDefaultBudget);
GreenValue green_plus(const HenonMap& f, const ExtPoint& z, double tol, int budget = kDefaultBudget);

/// Green function of f^{-1}, evaluated through the inverse conjugate.
GreenValue green_minus(const HenonMap& f, const Point& z, double tol, int budget = kDefaultBudget);

/// Forward and backward escape classification; sound on Escaping,
/// semi-decision on Bounded.
PointClass classify(const HenonMap& f, const Point& z, int budget = kDefaultBudget);
OrbitTag classify_forward(const HenonMap& f, const Point& z, int budget = kDefaultBudget);
OrbitTag classify_backward(const HenonMap& f, const Point& z, int budget = kDefaultBudget);

/// Per-node green_plus over a window in the t-plane of `line`.
/// Throws std::invalid_argument on a zero resolution or degenerate window.
Grid<GreenValue> render_green(const HenonMap& f, const ComplexLine& line, const Rect& window, int width,
                              int height, double tol, int budget = kDefaultBudget);

/// max(G+(z) - c, 0).
double level_set_potential(const HenonMap& f, double c, const Point& z, double tol = 1e-10);

/// Norm used for |Df^n|. The Fubini-Study operator norm measures the
/// derivative of the projective extension, which stays bounded on escaping
/// orbits; the Euclidean norm is the plain 2x2 operator norm.
enum class DerivativeMetric { FubiniStudy, Euclidean };

/// Real box [lo, hi]^4 (Re z1, Im z1, Re z2, Im z2) sampled on a regular grid.
struct HolderRegion {
  double lo = -3.0;
  double hi = 3.0;
  int samples_per_axis = 10;
  /// Further sample points; those outside the box are ignored. At depth n the
  /// maximum sits on orbits that stay bounded for n steps, which a coarse grid
  /// misses, so points of K (periodic points) belong here.
  std::vector<Point> extra_samples;
};

struct HolderEstimate {
  int n = 0;
  double beta_hat = 1.0;
  /// max over the region of (1/n) log |Df^n|.
  double max_log_growth = 0.0;
  HolderRegion region;
};

std::vector<HolderEstimate> holder_exponent(const HenonMap& f, const HolderRegion& region,
                                            const std::vector<int>& depths,
                                            DerivativeMetric metric = DerivativeMetric::FubiniStudy);

/// Operator norm of Df^n at z; log of the value. Exposed for tests.
double log_derivative_norm(const HenonMap& f, const Point& z, int n, DerivativeMetric metric);

}  // namespace henon
