#include "henon/currents.hpp"

#include "henon/green.hpp"
#include "henon/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace henon {

PotentialField green_potential(const HenonMap& f, double tol) {
  return {[f, tol](const Point& z) { return green_plus(f, z, tol).value; }, "G+"};
}

PotentialField log_abs_z1() {
  return {[](const Point& z) { return std::log(std::abs(z(0))); }, "log|z1|"};
}

PotentialField log_sup_norm() {
  return {[](const Point& z) { return std::log(std::max(std::abs(z(0)), std::abs(z(1)))); }, "log||z||"};
}

int SliceMeasure::pole_count() const { return static_cast<int>(std::count(pole.begin(), pole.end(), 1)); }

namespace {

constexpr int kRing = 2;

// Value standing in for u at an isolated logarithmic pole t0: u ~ c log|t - t0|
// + h, with c read off from the ring at h and h/2. Substituting
// mean(ring) - c pi/2 makes the five-point stencil put mass c in the pole cell.
double matched_pole_value(const std::function<double(cd)>& v, cd t0, double hx, double hy) {
  const cd dirs[4] = {{hx, 0.0}, {-hx, 0.0}, {0.0, hy}, {0.0, -hy}};
  double near = 0.0, half = 0.0;
  for (cd d : dirs) {
    near += v(t0 + d) / 4.0;
    half += v(t0 + 0.5 * d) / 4.0;
  }
  const double strength = (near - half) / kLn2;
  if (!std::isfinite(strength)) throw NumericalError("slice: pole is not isolated at grid scale");
  return near - strength * kPi / 2.0;
}

}  // namespace

SliceMeasure slice(const PotentialField& u, const ComplexLine& line, const Rect& window, int resolution) {
  if (resolution < 2) throw std::invalid_argument("slice: resolution must be >= 2");
  if (window.degenerate()) throw std::invalid_argument("slice: window is degenerate");
  SliceMeasure m;
  m.window = window;
  m.resolution = resolution;
  const int n = resolution;
  const double hx = m.hx(), hy = m.hy();
  const int side = n + 2 * kRing;
  auto node_t = [&](int a, int b) { return cd(window.x0 + (a + 0.5) * hx, window.y0 + (b + 0.5) * hy); };
  const std::function<double(cd)> on_line = [&](cd t) { return u(line.at(t)); };

  // U(a, b) for a, b in [-kRing, n + kRing)
  std::vector<double> values(static_cast<std::size_t>(side) * side);
  std::vector<std::uint8_t> singular(values.size(), 0);
  parallel_for(static_cast<std::size_t>(side), [&](std::size_t row) {
    const int b = static_cast<int>(row) - kRing;
    for (int a = -kRing; a < n + kRing; ++a) {
      const std::size_t k = row * side + (a + kRing);
      values[k] = on_line(node_t(a, b));
      if (!std::isfinite(values[k])) singular[k] = 1;
    }
  });
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!singular[k]) continue;
    const int a = static_cast<int>(k % side) - kRing, b = static_cast<int>(k / side) - kRing;
    values[k] = matched_pole_value(on_line, node_t(a, b), hx, hy);
  }
  auto U = [&](int a, int b) { return values[static_cast<std::size_t>(b + kRing) * side + (a + kRing)]; };

  const double wx = hy / hx / (2.0 * kPi), wy = hx / hy / (2.0 * kPi);
  m.cell_mass.assign(static_cast<std::size_t>(n) * n, 0.0);
  m.pole.assign(m.cell_mass.size(), 0);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t row) {
    const int j = static_cast<int>(row);
    for (int i = 0; i < n; ++i) {
      const double c = U(i, j);
      m.cell_mass[row * n + i] = wx * (U(i + 1, j) + U(i - 1, j) - 2.0 * c) + wy * (U(i, j + 1) + U(i, j - 1) - 2.0 * c);
      m.pole[row * n + i] = singular[static_cast<std::size_t>(j + kRing) * side + (i + kRing)];
    }
  });
  for (std::size_t k = 0; k < m.cell_mass.size(); ++k) {
    m.total_mass += m.cell_mass[k];
    if (!m.pole[k] && m.cell_mass[k] < 0.0) m.negative_mass += m.cell_mass[k];
  }

  // Outward normal differences across each edge. D2 is the plain difference
  // (its sum is the total mass); D4 is the fourth-order one, integrated with
  // the end-corrected midpoint rule.
  auto d4 = [](double out2, double out1, double in1, double in2) { return (27.0 * (out1 - in1) - (out2 - in2)) / 24.0; };
  auto edge4 = [&](const std::function<double(int)>& D) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += D(k);
    return s + ((D(n) - D(n - 1)) - (D(0) - D(-1))) / 24.0;
  };
  const double flux4 =
      wx * edge4([&](int j) { return d4(U(n + 1, j), U(n, j), U(n - 1, j), U(n - 2, j)); }) +
      wx * edge4([&](int j) { return d4(U(-2, j), U(-1, j), U(0, j), U(1, j)); }) +
      wy * edge4([&](int i) { return d4(U(i, n + 1), U(i, n), U(i, n - 1), U(i, n - 2)); }) +
      wy * edge4([&](int i) { return d4(U(i, -2), U(i, -1), U(i, 0), U(i, 1)); });
  m.error_estimate = std::abs(flux4 - m.total_mass);
  return m;
}

SliceMeasure coarsen(const SliceMeasure& m, int factor) {
  if (factor < 1 || m.resolution % factor != 0)
    throw std::invalid_argument("coarsen: factor must divide the resolution");
  SliceMeasure c;
  c.window = m.window;
  c.resolution = m.resolution / factor;
  c.error_estimate = m.error_estimate;
  c.cell_mass.assign(static_cast<std::size_t>(c.resolution) * c.resolution, 0.0);
  c.pole.assign(c.cell_mass.size(), 0);
  for (int j = 0; j < m.resolution; ++j)
    for (int i = 0; i < m.resolution; ++i) {
      const std::size_t k = static_cast<std::size_t>(j / factor) * c.resolution + i / factor;
      c.cell_mass[k] += m.mass(i, j);
      c.pole[k] |= m.pole[static_cast<std::size_t>(j) * m.resolution + i];
    }
  for (std::size_t k = 0; k < c.cell_mass.size(); ++k) {
    c.total_mass += c.cell_mass[k];
    if (!c.pole[k] && c.cell_mass[k] < 0.0) c.negative_mass += c.cell_mass[k];
  }
  return c;
}

double pair_slice(const SliceMeasure& m, const std::function<double(cd)>& chi) {
  double s = 0.0;
  for (int j = 0; j < m.resolution; ++j)
    for (int i = 0; i < m.resolution; ++i) s += m.mass(i, j) * chi(m.cell_center(i, j));
  return s;
}

// --- test forms ---------------------------------------------------------------

double bump(double t) { return t >= 1.0 ? 0.0 : (1.0 - t) * (1.0 - t) * (1.0 - t); }

double bump_laplacian(double t, double rho) { return t >= 1.0 ? 0.0 : 12.0 / (rho * rho) * (1.0 - t) * (3.0 * t - 1.0); }

TestForm::TestForm(Point c, double r) : center(std::move(c)), rho(r) {
  if (!(rho > 0.0)) throw std::invalid_argument("TestForm: rho must be > 0");
}

double TestForm::chi(const Point& z) const {
  const double r2 = rho * rho;
  return bump(std::norm(z(0) - center(0)) / r2) * bump(std::norm(z(1) - center(1)) / r2);
}

double TestForm::laplacian_z1(const Point& z) const {
  const double r2 = rho * rho;
  return bump_laplacian(std::norm(z(0) - center(0)) / r2, rho) * bump(std::norm(z(1) - center(1)) / r2);
}

double TestForm::laplacian_z2(const Point& z) const {
  const double r2 = rho * rho;
  return bump(std::norm(z(0) - center(0)) / r2) * bump_laplacian(std::norm(z(1) - center(1)) / r2, rho);
}

double TestForm::c2_norm() const {
  // radial phi(r) = B(r^2 / rho^2): Hessian eigenvalues phi'' and phi' / r
  double d1 = 0.0, d2 = 0.0;
  constexpr int kSamples = 20000;
  for (int k = 0; k <= kSamples; ++k) {
    const double t = static_cast<double>(k) / kSamples;
    const double r = rho * std::sqrt(t);
    const double b1 = -3.0 * (1.0 - t) * (1.0 - t), b2 = 6.0 * (1.0 - t);
    const double dphi = b1 * 2.0 * r / (rho * rho);
    const double ddphi = b2 * 4.0 * r * r / std::pow(rho, 4) + b1 * 2.0 / (rho * rho);
    d1 = std::max(d1, std::abs(dphi));
    d2 = std::max({d2, std::abs(ddphi), std::abs(b1 * 2.0 / (rho * rho))});
  }
  return std::max({1.0, d1, d2, d1 * d1});
}

double pair_form(const PotentialField& u, const TestForm& psi, int per_axis) {
  if (per_axis < 8) throw std::invalid_argument("pair_form: quadrature needs >= 8 nodes per axis");
  struct Node {
    cd offset;
    double b;
    double lap;
  };
  // Midpoint nodes of [-rho, rho]^2 inside the open disc, where chi lives.
  const double h = 2.0 * psi.rho / per_axis;
  std::vector<Node> disc;
  for (int j = 0; j < per_axis; ++j)
    for (int i = 0; i < per_axis; ++i) {
      const cd w(-psi.rho + (i + 0.5) * h, -psi.rho + (j + 0.5) * h);
      const double t = std::norm(w) / (psi.rho * psi.rho);
      if (t < 1.0) disc.push_back({w, bump(t), bump_laplacian(t, psi.rho)});
    }
  const double cell = h * h * h * h;
  const double total = parallel_sum(disc.size(), [&](std::size_t k) {
    const Node& a = disc[k];
    const cd z1 = psi.center(0) + a.offset;
    double s = 0.0;
    for (const Node& b : disc) {
      const double v = u(Point(z1, psi.center(1) + b.offset));
      if (std::isfinite(v)) s += v * (a.lap * b.b + a.b * b.lap);
    }
    return s;
  });
  return kPairFormConstant * total * cell;
}

}  // namespace henon
