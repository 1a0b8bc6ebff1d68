#include "henon/nevanlinna.hpp"

#include "henon/green.hpp"
#include "henon/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace henon {

namespace {

ExtComplex abs2(const ExtComplex& x) { return x * x.conj(); }

double ext_real(const ExtComplex& x) { return x.to_complex().real(); }

}  // namespace

ParametrizedCurve monomial_curve(int k) {
  if (k < 1) throw std::invalid_argument("monomial_curve: k must be >= 1");
  ParametrizedCurve c;
  c.label = "(xi^" + std::to_string(k) + ", 0)";
  c.jet = [k](cd xi) {
    const cd lower = k == 1 ? cd(1.0) : std::pow(xi, k - 1);
    return CurveJet{ExtPoint(Point(lower * xi, 0.0)), ExtPoint(Point(static_cast<double>(k) * lower, 0.0))};
  };
  return c;
}

double area_density(const CurveJet& j, AreaForm form) {
  const ExtComplex n1 = abs2(j.derivative.z1) + abs2(j.derivative.z2);
  if (form == AreaForm::Euclidean) return ext_real(n1);
  const ExtComplex wedge = j.value.z1 * j.derivative.z2 - j.value.z2 * j.derivative.z1;
  const ExtComplex d = ExtComplex(1.0) + abs2(j.value.z1) + abs2(j.value.z2);
  return ext_real((n1 + abs2(wedge)) / (d * d)) / kPi;
}

// --- saddles -----------------------------------------------------------------

namespace {

Point forward_k(const HenonMap& f, Point z, int k) {
  for (int i = 0; i < k; ++i) z = henon::apply(f, z);
  return z;
}

Matrix2 jacobian_k(const HenonMap& f, Point z, int k) {
  Matrix2 m = Matrix2::Identity();
  for (int i = 0; i < k; ++i) {
    m = jacobian(f, z) * m;
    z = henon::apply(f, z);
  }
  return m;
}

}  // namespace

Saddle make_saddle(const HenonMap& f, const Point& point, int period) {
  if (period < 1) throw std::invalid_argument("make_saddle: period must be >= 1");
  const double residual = (forward_k(f, point, period) - point).norm();
  if (!(residual <= 1e-10 * (1.0 + point.norm()))) {
    std::ostringstream msg;
    msg << "saddle residual " << residual << " exceeds 1e-10 at period " << period;
    throw NumericalError(msg.str());
  }
  const Matrix2 d = jacobian_k(f, point, period);
  Eigen::ComplexEigenSolver<Matrix2> es(d);
  int is = std::abs(es.eigenvalues()(0)) < std::abs(es.eigenvalues()(1)) ? 0 : 1;
  const cd ls = es.eigenvalues()(is), lu = es.eigenvalues()(1 - is);
  if (!(std::abs(ls) < 1.0 - 1e-9) || !(std::abs(lu) > 1.0 + 1e-9))
    throw NumericalError("make_saddle: multipliers do not straddle the unit circle");
  Saddle s;
  s.point = point;
  s.period = period;
  s.lambda_s = ls;
  s.lambda_u = lu;
  // Eigenvector from the null space of D - ls I, which is more accurate than
  // the solver's vector for the small eigenvalue.
  const Matrix2 m = d - ls * Matrix2::Identity();
  Point v = std::abs(m(0, 1)) + std::abs(m(0, 0)) >= std::abs(m(1, 1)) + std::abs(m(1, 0)) ? Point(m(0, 1), -m(0, 0))
                                                                                          : Point(m(1, 1), -m(1, 0));
  if (v.norm() == 0.0) v = es.eigenvectors().col(is);
  v.normalize();
  const int lead = std::abs(v(0)) >= std::abs(v(1)) ? 0 : 1;
  v *= std::conj(v(lead)) / std::abs(v(lead));
  s.v_s = v;
  return s;
}

double linearization_radius(const HenonMap& f, const Saddle& s) {
  const Matrix2 d = jacobian_k(f, s.point, s.period);
  Eigen::ComplexEigenSolver<Matrix2> es(d);
  std::vector<Point> dirs = {s.v_s, es.eigenvectors().col(0).normalized(), es.eigenvectors().col(1).normalized(),
                             Point(1.0, 0.0), Point(0.0, 1.0), Point(1.0, cd(0.0, 1.0)).normalized(),
                             Point(1.0, -1.0).normalized()};
  const double bound = 0.1 * std::abs(s.lambda_s);
  auto ok = [&](double rho) {
    for (const Point& u : dirs)
      for (double scale : {0.25, 0.5, 0.75, 1.0}) {
        const Point w = rho * scale * u;
        const Point defect = forward_k(f, s.point + w, s.period) - s.point - d * w;
        if (!(defect.norm() <= bound * w.norm())) return false;
      }
    return true;
  };
  double lo = 0.0, hi = 1.0;
  while (ok(hi) && hi < 1e6) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  if (!(lo > 0.0)) throw NumericalError("linearization_radius: no admissible radius");
  return lo;
}

// --- stable manifolds --------------------------------------------------------

namespace {

// Backward orbit of the saddle through every factor inverse, with the
// deviation polynomial q(x) = p(c2 + x) - p(c2) at each base point.
struct OrbitStep {
  Point base;
  Poly p;
  Poly q;
  Poly dp;
  cd inv_a;
};

std::vector<OrbitStep> backward_orbit(const HenonMap& f, const Saddle& s) {
  std::vector<OrbitStep> steps;
  cd z1 = s.point(0), z2 = s.point(1);
  for (int k = 0; k < s.period; ++k)
    for (const auto& h : f.factors()) {
      Poly q = h.p().shifted(z2) - Poly::constant(h.p()(z2));
      steps.push_back({Point(z1, z2), h.p(), std::move(q), h.p().derivative(), 1.0 / h.a()});
      h.backward(z1, z2);
    }
  return steps;
}

struct StableJet {
  std::vector<OrbitStep> orbit;
  Point v_s;
  int steps = 0;
  cd seed_scale;
  double switch_log = 0.0;

  CurveJet operator()(cd xi) const {
    cd d1 = seed_scale * xi * v_s(0), d2 = seed_scale * xi * v_s(1);
    cd t1 = seed_scale * v_s(0), t2 = seed_scale * v_s(1);
    const std::size_t m = orbit.size();
    int k = 0;
    // Deviation from the periodic orbit: exact base points, so the tiny seed
    // keeps full relative precision.
    for (; k < steps; ++k) {
      const OrbitStep& o = orbit[static_cast<std::size_t>(k) % m];
      const double big = std::max(std::max(std::abs(d1), std::abs(d2)), std::max(std::abs(t1), std::abs(t2)));
      if (big > 0.0 && std::log(big) > switch_log) break;
      const cd z2 = o.base(1) + d2;
      const cd nt2 = (t1 - o.dp(z2) * t2) * o.inv_a;
      const cd nd2 = (d1 - o.q(d2)) * o.inv_a;
      d1 = d2;
      d2 = nd2;
      t1 = t2;
      t2 = nt2;
    }
    const OrbitStep& at = orbit[static_cast<std::size_t>(k) % m];
    if (k == steps) return {ExtPoint(Point(at.base(0) + d1, at.base(1) + d2)), ExtPoint(Point(t1, t2))};
    ExtComplex z1 = ExtComplex(at.base(0)) + ExtComplex(d1), z2 = ExtComplex(at.base(1)) + ExtComplex(d2);
    ExtComplex u1(t1), u2(t2);
    for (; k < steps; ++k) {
      const OrbitStep& o = orbit[static_cast<std::size_t>(k) % m];
      const ExtComplex inv_a(o.inv_a);
      const ExtComplex nu2 = (u1 - poly_eval(o.dp, z2) * u2) * inv_a;
      u1 = u2;
      u2 = nu2;
      const ExtComplex nz2 = (z1 - poly_eval(o.p, z2)) * inv_a;
      z1 = z2;
      z2 = nz2;
    }
    return {ExtPoint(z1, z2), ExtPoint(u1, u2)};
  }
};

double ext_distance_log(const ExtPoint& a, const ExtPoint& b) {
  return std::max((a.z1 - b.z1).log_abs(), (a.z2 - b.z2).log_abs());
}

}  // namespace

int stable_manifold_depth(const HenonMap& f, const Saddle& s, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("stable_manifold_depth: r must be > 0");
  const double rho = linearization_radius(f, s);
  const double n = std::log(r / (1e-12 * rho)) / -std::log(std::abs(s.lambda_s));
  return std::max(1, static_cast<int>(std::ceil(n)));
}

double functional_equation_residual(const HenonMap& f, const Saddle& s, const ParametrizedCurve& c, double r,
                                    cd* worst) {
  // psi(xi) against f^{-k}(psi(lambda_s xi)); the backward form avoids the
  // cancellation that f suffers far out along the curve.
  std::vector<cd> samples;
  for (double radius : {r, 0.5 * r, 0.25 * r, 0.125 * r, 1.0})
    if (radius <= r)
      for (int j = 0; j < 64; ++j) samples.push_back(std::polar(radius, 2.0 * kPi * (j + 0.25) / 64.0));
  std::vector<double> res(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    const cd xi = samples[i];
    const CurveJet direct = c.jet(xi);
    ExtPoint back = c.jet(s.lambda_s * xi).value;
    for (int k = 0; k < s.period; ++k) f.backward(back.z1, back.z2);
    const double scale = log_add_exp(0.0, log_add_exp(direct.value.log_norm(),
                                                      std::log(std::abs(xi)) + direct.derivative.log_norm()));
    res[i] = std::exp(ext_distance_log(direct.value, back) - scale);
  });
  std::size_t w = 0;
  for (std::size_t i = 0; i < res.size(); ++i)
    if (!(res[i] <= res[w])) w = i;
  if (worst) *worst = samples[w];
  return res[w];
}

ParametrizedCurve stable_manifold(const HenonMap& f, const Saddle& s, int n, double r) {
  if (n < 0) throw std::invalid_argument("stable_manifold: depth must be >= 0");
  if (!(r > 0.0)) throw std::invalid_argument("stable_manifold: r must be > 0");
  const double rho = linearization_radius(f, s);
  if (std::pow(std::abs(s.lambda_s), n) * r > rho)
    throw std::invalid_argument("stable_manifold: |lambda_s|^n r exceeds the linearization radius");
  StableJet j;
  j.orbit = backward_orbit(f, s);
  j.v_s = s.v_s;
  j.steps = n * s.period * static_cast<int>(f.factors().size());
  j.seed_scale = std::pow(s.lambda_s, n);
  int dmax = 2;
  for (const auto& h : f.factors()) dmax = std::max(dmax, h.degree());
  j.switch_log = 600.0 / dmax;
  ParametrizedCurve c;
  c.jet = j;
  c.domain_radius = r;
  std::ostringstream label;
  label << "W^s depth " << n;
  c.label = label.str();
  cd worst;
  const double res = functional_equation_residual(f, s, c, r, &worst);
  if (!(res <= 1e-8)) {
    std::ostringstream msg;
    msg << "stable_manifold: functional equation residual " << res << " at xi = " << format_double(worst.real())
        << "," << format_double(worst.imag());
    throw NumericalError(msg.str());
  }
  return c;
}

// --- quadrature --------------------------------------------------------------

namespace {

// 7-point Kronrod rule with its embedded 3-point Gauss rule, on [-1, 1].
constexpr std::array<double, 7> kKronX = {-0.9604912687080203, -0.7745966692414834, -0.4342437493468026, 0.0,
                                          0.4342437493468026,  0.7745966692414834,  0.9604912687080203};
constexpr std::array<double, 7> kKronW = {0.1046562260264673, 0.2684880898683334, 0.4013974147759622,
                                          0.4509165386584741, 0.4013974147759622, 0.2684880898683334,
                                          0.1046562260264673};
constexpr std::array<double, 7> kGaussW = {0.0, 0.5555555555555556, 0.0, 0.8888888888888888,
                                           0.0, 0.5555555555555556, 0.0};
constexpr double kAngleOffset = 0.1234567;
constexpr int kMaxLevel = 40;
// Cells whose nodes all map beyond exp(kFarLog) are split anyway when a first
// order bound says the curve may come back within the cell.
constexpr double kFarLog = 9.0;

using Integrand = std::function<void(cd, const CurveJet&, std::vector<double>&)>;

struct NodeInfo {
  double log_norm;
  double log_speed;  // log(|phi'| / |phi|)
};

NodeInfo node_info(const CurveJet& j) { return {j.value.log_norm(), j.derivative.log_norm() - j.value.log_norm()}; }

struct Cell {
  double s0, s1, t0, t1;
  int interval;
  int level;
  std::vector<double> i0;  // int w dA
  std::vector<double> i1;  // int w log|xi| dA
  std::vector<double> err;
  bool far_split = false;
};

void evaluate_cell(const ParametrizedCurve& c, const Integrand& w, std::size_t width, Cell& cell) {
  cell.i0.assign(width, 0.0);
  cell.i1.assign(width, 0.0);
  std::vector<double> gauss(width, 0.0), v(width);
  const double hs = 0.5 * (cell.s1 - cell.s0), ht = 0.5 * (cell.t1 - cell.t0);
  bool all_far = true, may_return = false;
  for (int a = 0; a < 7; ++a) {
    const double s = 0.5 * (cell.s0 + cell.s1) + hs * kKronX[a];
    const double rho = std::exp(s);
    const double diam = rho * std::hypot(2.0 * hs, 2.0 * ht);
    for (int b = 0; b < 7; ++b) {
      const double t = 0.5 * (cell.t0 + cell.t1) + ht * kKronX[b];
      const cd xi = std::polar(rho, t);
      const CurveJet j = c.jet(xi);
      w(xi, j, v);
      const NodeInfo info = node_info(j);
      if (!(info.log_norm > kFarLog)) all_far = false;
      if (info.log_norm - diam * std::exp(info.log_speed) < kFarLog) may_return = true;
      const double jac = rho * rho * hs * ht;
      for (std::size_t k = 0; k < width; ++k) {
        const double g = v[k] * jac;
        cell.i0[k] += kKronW[a] * kKronW[b] * g;
        cell.i1[k] += kKronW[a] * kKronW[b] * g * s;
        gauss[k] += kGaussW[a] * kGaussW[b] * g;
      }
    }
  }
  cell.err.resize(width);
  for (std::size_t k = 0; k < width; ++k) cell.err[k] = std::abs(cell.i0[k] - gauss[k]);
  cell.far_split = all_far && may_return;
}

struct Cubature {
  std::vector<double> breaks;
  std::vector<Cell> cells;
  std::vector<double> inner0, inner1;
  double error = 0.0;
  bool unresolved = false;
};

Cubature polar_cubature(const ParametrizedCurve& c, const Integrand& w, std::size_t width,
                        const std::vector<double>& r_list, const NevanlinnaOptions& o) {
  if (r_list.empty()) throw std::invalid_argument("nevanlinna: empty radius list");
  for (std::size_t i = 0; i < r_list.size(); ++i) {
    if (!(r_list[i] > 0.0) || !std::isfinite(r_list[i]))
      throw std::invalid_argument("nevanlinna: radii must be positive and finite");
    if (i > 0 && !(r_list[i] > r_list[i - 1])) throw std::invalid_argument("nevanlinna: radii must be increasing");
  }
  if (r_list.back() > c.domain_radius) throw std::invalid_argument("nevanlinna: r exceeds the curve domain");
  if (!(o.annulus_ratio > 1.0) || o.sectors < 1 || !(o.rel_tol > 0.0) ||
      !(o.inner_fraction > 0.0 && o.inner_fraction < 1.0))
    throw std::invalid_argument("nevanlinna: invalid quadrature options");

  Cubature q;
  const double inner = o.inner_fraction * r_list.front();
  q.breaks = {inner};
  std::size_t next = 0;
  while (next < r_list.size()) {
    const double g = q.breaks.back() * o.annulus_ratio;
    if (g < r_list[next] * (1.0 - 1e-9)) {
      q.breaks.push_back(g);
    } else {
      q.breaks.push_back(r_list[next++]);
    }
  }
  for (std::size_t i = 0; i + 1 < q.breaks.size(); ++i)
    for (int k = 0; k < o.sectors; ++k) {
      Cell cell;
      cell.s0 = std::log(q.breaks[i]);
      cell.s1 = std::log(q.breaks[i + 1]);
      cell.t0 = kAngleOffset + 2.0 * kPi * k / o.sectors;
      cell.t1 = kAngleOffset + 2.0 * kPi * (k + 1) / o.sectors;
      cell.interval = static_cast<int>(i);
      cell.level = 0;
      q.cells.push_back(std::move(cell));
    }
  parallel_for(q.cells.size(), [&](std::size_t k) { evaluate_cell(c, w, width, q.cells[k]); });

  // inner disc with the density frozen at xi = 0
  std::vector<double> w0(width);
  w(cd(0.0), c.jet(cd(0.0)), w0);
  q.inner0.resize(width);
  q.inner1.resize(width);
  for (std::size_t k = 0; k < width; ++k) {
    q.inner0[k] = kPi * inner * inner * w0[k];
    q.inner1[k] = 2.0 * kPi * w0[k] * (inner * inner / 2.0 * std::log(inner) - inner * inner / 4.0);
  }

  while (true) {
    std::vector<double> total(q.inner0), err_total(width, 0.0);
    for (const Cell& cell : q.cells)
      for (std::size_t k = 0; k < width; ++k) {
        total[k] += cell.i0[k];
        err_total[k] += cell.err[k];
      }
    auto scaled = [&](const Cell& cell) {
      double e = 0.0;
      for (std::size_t k = 0; k < width; ++k)
        if (total[k] > 0.0) e = std::max(e, cell.err[k] / total[k]);
      return e;
    };
    q.error = 0.0;
    for (std::size_t k = 0; k < width; ++k)
      if (total[k] > 0.0) q.error = std::max(q.error, err_total[k] / total[k]);

    std::vector<std::size_t> order;
    double sum = 0.0;
    for (std::size_t k = 0; k < q.cells.size(); ++k)
      if (q.cells[k].level < kMaxLevel) {
        order.push_back(k);
        sum += scaled(q.cells[k]);
      }
    std::vector<std::uint8_t> chosen(q.cells.size(), 0);
    std::size_t count = 0;
    for (std::size_t k : order)
      if (q.cells[k].far_split) {
        chosen[k] = 1;
        ++count;
      }
    if (q.error > o.rel_tol) {
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t x, std::size_t y) { return scaled(q.cells[x]) > scaled(q.cells[y]); });
      double picked = 0.0;
      for (std::size_t k : order) {
        if (picked >= 0.5 * sum) break;
        if (!chosen[k]) ++count;
        chosen[k] = 1;
        picked += scaled(q.cells[k]);
      }
    }
    if (count == 0) break;
    if (q.cells.size() + 3 * count > static_cast<std::size_t>(o.max_cells)) {
      q.unresolved = true;
      break;
    }
    std::vector<Cell> kept, born;
    for (std::size_t k = 0; k < q.cells.size(); ++k) {
      const Cell& p = q.cells[k];
      if (!chosen[k]) {
        kept.push_back(p);
        continue;
      }
      const double sm = 0.5 * (p.s0 + p.s1), tm = 0.5 * (p.t0 + p.t1);
      for (int part = 0; part < 4; ++part) {
        Cell ch;
        ch.s0 = part & 1 ? sm : p.s0;
        ch.s1 = part & 1 ? p.s1 : sm;
        ch.t0 = part & 2 ? tm : p.t0;
        ch.t1 = part & 2 ? p.t1 : tm;
        ch.interval = p.interval;
        ch.level = p.level + 1;
        born.push_back(std::move(ch));
      }
    }
    parallel_for(born.size(), [&](std::size_t k) { evaluate_cell(c, w, width, born[k]); });
    for (Cell& ch : born) kept.push_back(std::move(ch));
    q.cells = std::move(kept);
  }
  // fixed summation order: by interval, then angle, then radius
  std::stable_sort(q.cells.begin(), q.cells.end(), [](const Cell& x, const Cell& y) {
    if (x.interval != y.interval) return x.interval < y.interval;
    if (x.t0 != y.t0) return x.t0 < y.t0;
    return x.s0 < y.s0;
  });
  return q;
}

// int_{|xi| < r} w and int_{|xi| < r} w log(r / |xi|) for every r in r_list.
void accumulate(const Cubature& q, const std::vector<double>& r_list, std::size_t width,
                std::vector<std::vector<double>>& mass, std::vector<std::vector<double>>& weighted) {
  std::vector<double> m0(q.inner0), m1(q.inner1);
  std::size_t cell = 0, r_index = 0;
  for (std::size_t i = 0; i + 1 < q.breaks.size(); ++i) {
    for (; cell < q.cells.size() && q.cells[cell].interval == static_cast<int>(i); ++cell)
      for (std::size_t k = 0; k < width; ++k) {
        m0[k] += q.cells[cell].i0[k];
        m1[k] += q.cells[cell].i1[k];
      }
    if (r_index < r_list.size() && q.breaks[i + 1] == r_list[r_index]) {
      const double lr = std::log(r_list[r_index]);
      std::vector<double> wt(width);
      for (std::size_t k = 0; k < width; ++k) wt[k] = lr * m0[k] - m1[k];
      mass.push_back(m0);
      weighted.push_back(std::move(wt));
      ++r_index;
    }
  }
}

// Adaptive Kronrod rule on [0, 2 pi] for theta -> g(r e^{i theta}).
double circle_integral(const ParametrizedCurve& c, const std::function<double(const CurveJet&)>& g, double r,
                       const NevanlinnaOptions& o) {
  struct Arc {
    double t0, t1, value, err;
    int level;
    bool far_split;
  };
  auto eval = [&](Arc& a) {
    const double h = 0.5 * (a.t1 - a.t0);
    double kron = 0.0, gauss = 0.0;
    bool all_far = true, may_return = false;
    for (int b = 0; b < 7; ++b) {
      const CurveJet j = c.jet(std::polar(r, 0.5 * (a.t0 + a.t1) + h * kKronX[b]));
      const double v = g(j) * h;
      kron += kKronW[b] * v;
      gauss += kGaussW[b] * v;
      const NodeInfo info = node_info(j);
      if (!(info.log_norm > kFarLog)) all_far = false;
      if (info.log_norm - 2.0 * h * r * std::exp(info.log_speed) < kFarLog) may_return = true;
    }
    a.value = kron;
    a.err = std::abs(kron - gauss);
    a.far_split = all_far && may_return;
  };
  const int n0 = std::max(4, o.sectors);
  std::vector<Arc> arcs;
  for (int k = 0; k < n0; ++k)
    arcs.push_back({kAngleOffset + 2.0 * kPi * k / n0, kAngleOffset + 2.0 * kPi * (k + 1) / n0, 0.0, 0.0, 0, false});
  parallel_for(arcs.size(), [&](std::size_t k) { eval(arcs[k]); });
  while (true) {
    double total = 0.0, err = 0.0;
    for (const Arc& a : arcs) {
      total += a.value;
      err += a.err;
    }
    std::vector<Arc> next, born;
    for (const Arc& a : arcs) {
      const bool split = a.level < kMaxLevel && (a.far_split || (err > o.rel_tol * std::abs(total) &&
                                                                 a.err * arcs.size() > 0.25 * err));
      if (!split) {
        next.push_back(a);
        continue;
      }
      const double m = 0.5 * (a.t0 + a.t1);
      born.push_back({a.t0, m, 0.0, 0.0, a.level + 1, false});
      born.push_back({m, a.t1, 0.0, 0.0, a.level + 1, false});
    }
    if (born.empty()) break;
    if (next.size() + born.size() > static_cast<std::size_t>(o.max_cells)) break;
    parallel_for(born.size(), [&](std::size_t k) { eval(born[k]); });
    for (Arc& a : born) next.push_back(a);
    std::stable_sort(next.begin(), next.end(), [](const Arc& x, const Arc& y) { return x.t0 < y.t0; });
    arcs = std::move(next);
  }
  double total = 0.0;
  for (const Arc& a : arcs) total += a.value;
  return total;
}

// Potential of the area form: omega = dd^c u with u = log(1 + |z|^2) / 2 for
// Fubini-Study and u = (pi / 2) |z|^2 for Euclidean.
double form_potential(const ExtPoint& z, AreaForm form) {
  const ExtComplex n = abs2(z.z1) + abs2(z.z2);
  if (form == AreaForm::Euclidean) return 0.5 * kPi * ext_real(n);
  return 0.5 * log_add_exp(0.0, n.log_abs());
}

// Jensen: int_{|xi|<r} log(r / |xi|) dd^c u(phi) = mean of u o phi on |xi| = r minus u(phi(0)).
double jensen_characteristic(const ParametrizedCurve& c, double r, const NevanlinnaOptions& o) {
  const double mean =
      circle_integral(c, [&](const CurveJet& j) { return form_potential(j.value, o.form); }, r, o) / (2.0 * kPi);
  return mean - form_potential(c.jet(cd(0.0)).value, o.form);
}

bool finite_point(const ExtPoint& p, Point& out) {
  if (p.log_norm() > 300.0) return false;
  out = p.to_point();
  return true;
}

}  // namespace

double area_function(const ParametrizedCurve& c, double t, const NevanlinnaOptions& o) {
  const Integrand w = [&](cd, const CurveJet& j, std::vector<double>& out) { out[0] = area_density(j, o.form); };
  std::vector<std::vector<double>> mass, weighted;
  accumulate(polar_cubature(c, w, 1, {t}, o), {t}, 1, mass, weighted);
  return mass[0][0];
}

double characteristic(const ParametrizedCurve& c, double r, const NevanlinnaOptions& o) {
  const Integrand w = [&](cd, const CurveJet& j, std::vector<double>& out) { out[0] = area_density(j, o.form); };
  std::vector<std::vector<double>> mass, weighted;
  accumulate(polar_cubature(c, w, 1, {r}, o), {r}, 1, mass, weighted);
  return weighted[0][0];
}

std::vector<NevanlinnaPairing> tau_pairings(const ParametrizedCurve& c, const std::vector<double>& r_list,
                                            const std::vector<TestForm>& psi, const NevanlinnaOptions& o) {
  const std::size_t width = 1 + psi.size();
  const Integrand w = [&](cd, const CurveJet& j, std::vector<double>& out) {
    out[0] = area_density(j, o.form);
    Point z;
    const bool near = finite_point(j.value, z);
    const double beta = near ? 2.0 * j.derivative.to_point().squaredNorm() : 0.0;
    for (std::size_t k = 0; k < psi.size(); ++k) {
      const double chi = near ? psi[k].chi(z) : 0.0;
      out[k + 1] = chi == 0.0 ? 0.0 : chi * beta;
    }
  };
  const Cubature q = polar_cubature(c, w, width, r_list, o);
  std::vector<std::vector<double>> mass, weighted;
  accumulate(q, r_list, width, mass, weighted);
  std::vector<NevanlinnaPairing> out;
  for (std::size_t i = 0; i < r_list.size(); ++i) {
    NevanlinnaPairing p;
    p.r = r_list[i];
    p.T_r = weighted[i][0];
    if (!(p.T_r > 0.0)) throw NumericalError("tau_pairing: T(r) <= 0");
    // <phi^*(log+ r / sigma), dd^c u> moved onto the boundary circle
    p.full_mass = jensen_characteristic(c, p.r, o) / p.T_r;
    for (std::size_t k = 0; k < psi.size(); ++k) p.tau_psi.push_back(weighted[i][k + 1] / p.T_r);
    p.ddc_mass_proxy = 1.0 / p.T_r;
    p.error_estimate = q.error;
    p.unresolved = q.unresolved;
    out.push_back(std::move(p));
  }
  return out;
}

NevanlinnaPairing tau_pairing(const ParametrizedCurve& c, double r, const TestForm& psi, const NevanlinnaOptions& o) {
  return tau_pairings(c, {r}, {psi}, o).front();
}

double ahlfors_ratio(const ParametrizedCurve& c, double r, const NevanlinnaOptions& o) {
  if (!(r > 0.0) || r > c.domain_radius) throw std::invalid_argument("ahlfors_ratio: r outside the curve domain");
  const double length =
      r * circle_integral(c, [&](const CurveJet& j) { return std::sqrt(area_density(j, o.form)); }, r, o);
  return length / area_function(c, r, o);
}

std::vector<RigidityRow> rigidity_experiment(const HenonMap& f, const Saddle& s, const std::vector<double>& r_list,
                                             const std::vector<TestForm>& psi, const RigidityOptions& o) {
  if (r_list.empty()) throw std::invalid_argument("rigidity_experiment: empty radius list");
  const double r_max = r_list.back();
  const int depth = stable_manifold_depth(f, s, r_max);
  const ParametrizedCurve curve = stable_manifold(f, s, depth, r_max);

  // G+ o psi(lambda_s^-m eta) = d^{-km} G+ o psi(eta), so by the checked
  // functional equation it suffices to sample the fundamental annulus.
  const double inner = std::abs(s.lambda_s);
  std::vector<cd> samples;
  const int per_ring = std::max(1, o.membership_samples / 4);
  for (int q = 0; q < 4; ++q)
    for (int j = 0; j < per_ring; ++j)
      samples.push_back(std::polar(inner + (1.0 - inner) * q / 3.0, 2.0 * kPi * (j + 0.5) / per_ring));
  for (const cd& xi : samples) {
    const double g = green_plus(f, curve.value(xi), o.green_tol).value;
    if (!(g <= 1e-6)) {
      std::ostringstream msg;
      msg << "rigidity_experiment: curve leaves K+ (G+ = " << g << ") at xi = " << format_double(xi.real()) << ","
          << format_double(xi.imag());
      throw NumericalError(msg.str());
    }
  }

  const std::vector<NevanlinnaPairing> pairings = tau_pairings(curve, r_list, psi, o.nevanlinna);
  const PotentialField g = green_potential(f, o.green_tol);
  std::vector<double> tplus;
  for (const TestForm& form : psi) tplus.push_back(pair_form(g, form, o.quadrature));

  std::vector<RigidityRow> rows;
  for (const NevanlinnaPairing& p : pairings)
    for (std::size_t k = 0; k < psi.size(); ++k) {
      RigidityRow row;
      row.r = p.r;
      row.psi_id = static_cast<int>(k);
      row.tau_psi = p.tau_psi[k];
      row.tplus_psi = tplus[k];
      row.abs_diff = std::abs(row.tau_psi - row.tplus_psi);
      row.T_r = p.T_r;
      row.ddc_mass_proxy = p.ddc_mass_proxy;
      row.full_mass = p.full_mass;
      rows.push_back(row);
    }
  return rows;
}

}  // namespace henon
