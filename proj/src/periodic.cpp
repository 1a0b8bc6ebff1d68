#include "henon/periodic.hpp"

#include "henon/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace henon {

std::string_view to_string(PointKind k) {
  switch (k) {
    case PointKind::Attracting: return "attracting";
    case PointKind::Repelling: return "repelling";
    case PointKind::Saddle: return "saddle";
    case PointKind::Neutral: return "neutral";
  }
  return "neutral";
}

namespace {

// f^n(z) and D(f^n)(z).
std::pair<Point, Matrix2> orbit_with_derivative(const HenonMap& f, const Point& z, int n) {
  Matrix2 d = Matrix2::Identity();
  cd z1 = z(0), z2 = z(1);
  for (int k = 0; k < n; ++k)
    for (auto it = f.factors().rbegin(); it != f.factors().rend(); ++it) {
      d = it->jacobian(z1) * d;
      it->forward(z1, z2);
    }
  return {Point(z1, z2), d};
}

PointKind kind_of(cd m1, cd m2) {
  auto side = [](cd m) {
    const double r = std::abs(m);
    return r < 1.0 - kNeutralTolerance ? -1 : (r > 1.0 + kNeutralTolerance ? 1 : 0);
  };
  const int a = side(m1), b = side(m2);
  if (a == 0 || b == 0) return PointKind::Neutral;
  if (a < 0 && b < 0) return PointKind::Attracting;
  if (a > 0 && b > 0) return PointKind::Repelling;
  return PointKind::Saddle;
}

const HenonFactor& single_factor(const HenonMap& f, const char* what) {
  if (f.factors().size() != 1) throw std::invalid_argument(std::string(what) + ": needs a single-factor map");
  return f.factors().front();
}

bool lex_less(const Point& x, const Point& y) {
  const double kx[4] = {x(0).real(), x(1).real(), x(0).imag(), x(1).imag()};
  const double ky[4] = {y(0).real(), y(1).real(), y(0).imag(), y(1).imag()};
  return std::lexicographical_compare(kx, kx + 4, ky, ky + 4);
}

constexpr double kDedup = 1e-7;
constexpr double kVerify = 1e-10;
constexpr int kMaxHalvings = 40;
constexpr int kMaxNewton = 80;

std::optional<Point> newton(const HenonMap& f, Point z, int n) {
  auto [w, d] = orbit_with_derivative(f, z, n);
  Point r = w - z;
  double res = r.norm();
  for (int it = 0; it < kMaxNewton; ++it) {
    if (!std::isfinite(res) || z.norm() > 1e8) return std::nullopt;
    if (res <= 1e-14 * (1.0 + z.norm())) break;
    const Matrix2 jac = d - Matrix2::Identity();
    const Point step = jac.partialPivLu().solve(-r);
    if (!step.allFinite()) return std::nullopt;
    double lambda = 1.0;
    bool improved = false;
    for (int h = 0; h <= kMaxHalvings; ++h, lambda *= 0.5) {
      const Point trial = z + lambda * step;
      auto [tw, td] = orbit_with_derivative(f, trial, n);
      const double tres = (tw - trial).norm();
      if (std::isfinite(tres) && tres < res) {
        z = trial;
        w = tw;
        d = td;
        r = tw - trial;
        res = tres;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  if (!(res <= kVerify * (1.0 + z.norm()))) return std::nullopt;
  return z;
}

}  // namespace

PeriodicPoint make_periodic_point(const HenonMap& f, const Point& z, int n) {
  const auto [w, d] = orbit_with_derivative(f, z, n);
  PeriodicPoint p;
  p.point = z;
  p.period = n;
  p.residual = (w - z).norm();
  const cd tr = d.trace(), det = d.determinant();
  const cd disc = std::sqrt(tr * tr / 4.0 - det);
  cd m1 = tr / 2.0 + disc, m2 = tr / 2.0 - disc;
  // the smaller root from the product avoids cancellation
  if (std::abs(m1) < std::abs(m2)) std::swap(m1, m2);
  if (m1 != cd(0.0)) m2 = det / m1;
  p.mult1 = m2;
  p.mult2 = m1;
  p.kind = kind_of(p.mult1, p.mult2);
  return p;
}

std::vector<PeriodicPoint> fixed_points_exact(const HenonMap& f) {
  const HenonFactor& h = single_factor(f, "fixed_points_exact");
  const Poly elim = h.p() + Poly({0.0, h.a() - 1.0});
  std::vector<PeriodicPoint> out;
  for (cd x : poly_roots(elim)) out.push_back(make_periodic_point(f, Point(x, x), 1));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return lex_less(a.point, b.point); });
  return out;
}

std::vector<PeriodicPoint> period_two_exact(const HenonMap& f) {
  const HenonFactor& h = single_factor(f, "period_two_exact");
  const Poly& p = h.p();
  const cd b = 1.0 - h.a();
  std::vector<PeriodicPoint> out;
  if (std::abs(b) < 1e-14) {
    const auto roots = poly_roots(p);
    for (cd x : roots)
      for (cd y : roots) out.push_back(make_periodic_point(f, Point(x, y), 2));
  } else {
    const Poly q = (1.0 / b) * p;
    const Poly elim = p.compose(q) - Poly({0.0, b});
    for (cd x : poly_roots(elim)) out.push_back(make_periodic_point(f, Point(x, q(x)), 2));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b2) { return lex_less(a.point, b2.point); });
  return out;
}

PeriodicSearch periodic_points(const HenonMap& f, int n, const SeedBox& box) {
  if (n < 1) throw std::invalid_argument("periodic_points: n must be >= 1");
  const double expected = std::pow(static_cast<double>(f.degree()), n);
  if (expected > 4096) throw std::invalid_argument("periodic_points: d^n exceeds 4096");
  if (box.seeds_per_axis < 1) throw std::invalid_argument("periodic_points: seeds_per_axis must be >= 1");
  const double r = box.half_width > 0.0 ? box.half_width : std::max(f.certificate().radius, f.backward_radius());
  const int m = box.seeds_per_axis;
  const std::size_t total = static_cast<std::size_t>(m) * m * m * m;
  auto coord = [&](std::size_t k) { return m == 1 ? 0.0 : -r + 2.0 * r * static_cast<double>(k) / (m - 1); };

  std::vector<std::optional<Point>> found(total);
  parallel_for(total, [&](std::size_t idx) {
    std::size_t q = idx;
    double c[4];
    for (double& v : c) {
      v = coord(q % m);
      q /= m;
    }
    found[idx] = newton(f, Point(cd(c[0], c[1]), cd(c[2], c[3])), n);
  });

  PeriodicSearch out;
  out.expected = static_cast<int>(expected);
  std::vector<Point> unique;
  for (const auto& z : found) {
    if (!z) continue;
    const bool seen = std::any_of(unique.begin(), unique.end(), [&](const Point& u) { return (u - *z).norm() < kDedup; });
    if (!seen) unique.push_back(*z);
  }
  std::sort(unique.begin(), unique.end(), lex_less);
  for (const Point& z : unique) {
    out.points.push_back(make_periodic_point(f, z, n));
    const auto& p = out.points.back();
    if (std::abs(p.mult1 - 1.0) < 1e-6 || std::abs(p.mult2 - 1.0) < 1e-6) out.degenerate = true;
  }
  out.complete = static_cast<int>(out.points.size()) == out.expected;
  return out;
}

double saddle_measure(const PeriodicSearch& search, const std::function<double(const Point&)>& bump) {
  if (search.points.empty()) return 0.0;
  double s = 0.0;
  for (const auto& p : search.points)
    if (p.kind == PointKind::Saddle) s += bump(p.point);
  return s / static_cast<double>(search.points.size());
}

double saddle_measure(const HenonMap& f, int n, const std::function<double(const Point&)>& bump, const SeedBox& box) {
  const PeriodicSearch search = periodic_points(f, n, box);
  if (!search.complete) throw NumericalError("saddle_measure: periodic point search is incomplete");
  return saddle_measure(search, bump);
}

}  // namespace henon
