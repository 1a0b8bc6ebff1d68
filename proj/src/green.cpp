#include "henon/green.hpp"

#include "henon/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace henon {

namespace {

// Tail data of one map. With L = log|w1| at a map boundary n inside
// V+ = {|w1| >= max(|w2|, R)}:
//   G+ = (L + lead_tail) / D^n + err,  |err| <= (2/3) (-log(1 - K / |w1|)) / D^n,
// where K = max_i (S_i + |a_i|) / |c_i| and lead_tail collects the exact
// log|c_i| contributions of all later factors. Off V+,
//   G+(w) <= log max(|w|, R) + upper_tail.
struct Tail {
  double radius = 0.0;
  double log_d = 0.0;
  double lead_tail = 0.0;
  double upper_tail = 0.0;
  double log_k = kNegInf;
  double switch_log = 0.0;
};

Tail make_tail(const HenonMap& f) {
  Tail t;
  t.radius = f.certificate().radius;
  const double d = f.degree();
  t.log_d = std::log(d);
  double k = 0.0, cumulative = 1.0, lead = 0.0, upper = 0.0;
  int dmax = 2;
  const auto& fs = f.factors();
  for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
    const double c = std::abs(it->p().leading());
    const double s = it->p().lower_coefficient_sum();
    const double a = std::abs(it->a());
    cumulative *= it->degree();
    dmax = std::max(dmax, it->degree());
    k = std::max(k, (s + a) / c);
    lead += std::log(c) / cumulative;
    upper += std::max(0.0, std::log(c + s + a)) / cumulative;
  }
  t.lead_tail = lead * d / (d - 1.0);
  t.upper_tail = upper * d / (d - 1.0);
  t.log_k = k > 0.0 ? std::log(k) : kNegInf;
  t.switch_log = 600.0 / dmax;
  return t;
}

bool in_forward_region(double l1, double l2, double log_r) { return l1 >= l2 && l1 >= log_r; }

struct Engine {
  const HenonMap& f;
  Tail t;
  double log_r;

  explicit Engine(const HenonMap& map) : f(map), t(make_tail(map)), log_r(std::log(t.radius)) {}

  double escaped_error(double l1, int n) const {
    if (t.log_k == kNegInf) return 0.0;
    const double eta = std::exp(t.log_k - l1);
    return (2.0 / 3.0) * -std::log1p(-eta) * std::exp(-n * t.log_d);
  }

  double bounded_error(double log_norm, int n) const {
    return (std::max(log_norm, log_r) + t.upper_tail) * std::exp(-n * t.log_d);
  }

  template <class Step>
  GreenValue run(double l1, double l2, Step&& step, double tol, int budget, bool stop_on_escape) const {
    GreenValue out;
    for (int n = 0;; ++n) {
      if (in_forward_region(l1, l2, log_r)) {
        if (!out.escaped_at) out.escaped_at = n;
        const double err = escaped_error(l1, n);
        if (stop_on_escape || err <= tol || n >= budget) {
          out.value = std::max(0.0, (l1 + t.lead_tail) * std::exp(-n * t.log_d));
          out.error_bound = err;
          out.iterations = n;
          return out;
        }
      } else {
        const double upper = bounded_error(std::max(l1, l2), n);
        if (upper <= tol || n >= budget) {
          out.value = 0.0;
          out.error_bound = upper;
          out.iterations = n;
          return out;
        }
      }
      step(l1, l2);
    }
  }

  GreenValue evaluate(const ExtPoint& z0, double tol, int budget, bool stop_on_escape) const {
    ExtPoint w = z0;
    auto step = [&](double& l1, double& l2) {
      f.forward(w.z1, w.z2);
      l1 = w.z1.log_abs();
      l2 = w.z2.log_abs();
    };
    return run(w.z1.log_abs(), w.z2.log_abs(), step, tol, budget, stop_on_escape);
  }

  GreenValue evaluate(const Point& z0, double tol, int budget, bool stop_on_escape) const {
    // Plain doubles while the orbit is moderate; the rest in extended range.
    cd z1 = z0(0), z2 = z0(1);
    bool extended = false;
    ExtPoint w;
    auto step = [&](double& l1, double& l2) {
      if (!extended && std::max(l1, l2) > t.switch_log) {
        extended = true;
        w = ExtPoint(Point(z1, z2));
      }
      if (extended) {
        f.forward(w.z1, w.z2);
        l1 = w.z1.log_abs();
        l2 = w.z2.log_abs();
      } else {
        f.forward(z1, z2);
        l1 = std::log(std::abs(z1));
        l2 = std::log(std::abs(z2));
      }
    };
    if (!std::isfinite(std::abs(z1)) || !std::isfinite(std::abs(z2)))
      throw NumericalError("green: non-finite input point");
    return run(std::log(std::abs(z1)), std::log(std::abs(z2)), step, tol, budget, stop_on_escape);
  }
};

void check_tol(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("green: tol must be > 0");
}

Point swap(const Point& z) { return Point(z(1), z(0)); }

OrbitTag tag_of(const GreenValue& g, int budget) {
  if (g.escaped_at) return {OrbitTag::Kind::Escaping, *g.escaped_at};
  return {OrbitTag::Kind::BoundedWithinBudget, budget};
}

}  // namespace

GreenValue green_plus(const HenonMap& f, const Point& z, double tol, int budget) {
  check_tol(tol);
  return Engine(f).evaluate(z, tol, budget, false);
}

GreenValue green_plus(const HenonMap& f, const ExtPoint& z, double tol, int budget) {
  check_tol(tol);
  return Engine(f).evaluate(z, tol, budget, false);
}

// f^{-1} = s o g o s with g the inverse conjugate, so G-_f(z) = G+_g(s z).
GreenValue green_minus(const HenonMap& f, const Point& z, double tol, int budget) {
  check_tol(tol);
  return Engine(f.inverse_conjugate()).evaluate(swap(z), tol, budget, false);
}

OrbitTag classify_forward(const HenonMap& f, const Point& z, int budget) {
  if (budget < 1) throw std::invalid_argument("classify: budget must be >= 1");
  // tol = 0 disables the early stop on the upper bound: only the certificate
  // or the budget end the orbit.
  return tag_of(Engine(f).evaluate(z, 0.0, budget, true), budget);
}

OrbitTag classify_backward(const HenonMap& f, const Point& z, int budget) {
  if (budget < 1) throw std::invalid_argument("classify: budget must be >= 1");
  return tag_of(Engine(f.inverse_conjugate()).evaluate(swap(z), 0.0, budget, true), budget);
}

PointClass classify(const HenonMap& f, const Point& z, int budget) {
  return {classify_forward(f, z, budget), classify_backward(f, z, budget)};
}

Grid<GreenValue> render_green(const HenonMap& f, const ComplexLine& line, const Rect& window, int width,
                              int height, double tol, int budget) {
  check_tol(tol);
  Grid<GreenValue> grid(window, width, height);
  const Engine engine(f);
  constexpr int kTile = 32;
  const int tiles_x = (width + kTile - 1) / kTile;
  const int tiles_y = (height + kTile - 1) / kTile;
  parallel_for(static_cast<std::size_t>(tiles_x) * tiles_y, [&](std::size_t tile) {
    const int tx = static_cast<int>(tile % tiles_x), ty = static_cast<int>(tile / tiles_x);
    for (int j = ty * kTile; j < std::min(height, (ty + 1) * kTile); ++j)
      for (int i = tx * kTile; i < std::min(width, (tx + 1) * kTile); ++i)
        grid.at(i, j) = engine.evaluate(line.at(grid.node(i, j)), tol, budget, false);
  });
  return grid;
}

double level_set_potential(const HenonMap& f, double c, const Point& z, double tol) {
  if (c < 0.0) throw std::invalid_argument("level_set_potential: c must be >= 0");
  return std::max(green_plus(f, z, tol).value - c, 0.0);
}

// --- derivative growth -------------------------------------------------------

namespace {

// Square root of the Fubini-Study metric tensor at z (eigenvalues 1/s^2 along
// z and 1/s across, s^2 = 1 + |z|^2), or its inverse.
Matrix2 fs_root(const Point& z, bool inverse) {
  const double r2 = z.squaredNorm();
  const double s = std::sqrt(1.0 + r2);
  if (r2 == 0.0) return Matrix2::Identity();
  const Matrix2 proj = z * z.adjoint() / r2;
  if (inverse) return s * (Matrix2::Identity() + (s - 1.0) * proj);
  return (Matrix2::Identity() - (1.0 - 1.0 / s) * proj) / s;
}

double op_norm(const Matrix2& m) { return Eigen::JacobiSVD<Matrix2>(m).singularValues()(0); }

constexpr double kFarAway = 1e60;

}  // namespace

double log_derivative_norm(const HenonMap& f, const Point& z, int n, DerivativeMetric metric) {
  if (n < 1) throw std::invalid_argument("log_derivative_norm: n must be >= 1");
  const bool fs = metric == DerivativeMetric::FubiniStudy;
  Matrix2 acc = fs ? fs_root(z, true) : Matrix2::Identity();
  double log_scale = 0.0;
  cd z1 = z(0), z2 = z(1);
  for (int k = 0; k < n; ++k) {
    for (auto it = f.factors().rbegin(); it != f.factors().rend(); ++it) {
      acc = it->jacobian(z1) * acc;
      it->forward(z1, z2);
    }
    const Point w(z1, z2);
    const double norm = op_norm(acc);
    if (norm > 1e100 || (norm < 1e-100 && norm > 0.0)) {
      acc /= norm;
      log_scale += std::log(norm);
    }
    if (w.cwiseAbs().maxCoeff() > kFarAway) {
      // Near I- the projective extension contracts, so the remaining factors
      // have Fubini-Study norm <= 1 and the partial product bounds the full one.
      // The Euclidean norm has no such bound; the orbit is cut here as well.
      return log_scale + std::log(op_norm(fs ? Matrix2(fs_root(w, false) * acc) : acc));
    }
  }
  const Point w(z1, z2);
  return log_scale + std::log(op_norm(fs ? Matrix2(fs_root(w, false) * acc) : acc));
}

std::vector<HolderEstimate> holder_exponent(const HenonMap& f, const HolderRegion& region,
                                            const std::vector<int>& depths, DerivativeMetric metric) {
  if (!(region.hi > region.lo) || region.samples_per_axis < 2)
    throw std::invalid_argument("holder_exponent: region must be nondegenerate with >= 2 samples per axis");
  const int m = region.samples_per_axis;
  const std::size_t grid = static_cast<std::size_t>(m) * m * m * m;
  std::vector<Point> extra;
  for (const Point& z : region.extra_samples) {
    const double lo = std::min({z(0).real(), z(0).imag(), z(1).real(), z(1).imag()});
    const double hi = std::max({z(0).real(), z(0).imag(), z(1).real(), z(1).imag()});
    if (lo >= region.lo && hi <= region.hi) extra.push_back(z);
  }
  const std::size_t total = grid + extra.size();
  const double step = (region.hi - region.lo) / (m - 1);
  const double log_d = std::log(static_cast<double>(f.degree()));
  std::vector<HolderEstimate> out;
  for (int n : depths) {
    std::vector<double> growth(total);
    parallel_for(total, [&](std::size_t idx) {
      if (idx >= grid) {
        growth[idx] = log_derivative_norm(f, extra[idx - grid], n, metric) / n;
        return;
      }
      std::size_t r = idx;
      double c[4];
      for (double& v : c) {
        v = region.lo + step * static_cast<double>(r % m);
        r /= m;
      }
      growth[idx] = log_derivative_norm(f, Point(cd(c[0], c[1]), cd(c[2], c[3])), n, metric) / n;
    });
    HolderEstimate e;
    e.n = n;
    e.region = region;
    e.max_log_growth = *std::max_element(growth.begin(), growth.end());
    e.beta_hat = e.max_log_growth > 0.0 ? std::min(1.0, log_d / e.max_log_growth) : 1.0;
    out.push_back(e);
  }
  return out;
}

}  // namespace henon
