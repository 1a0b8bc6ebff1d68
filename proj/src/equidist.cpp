#include "henon/equidist.hpp"

#include "henon/green.hpp"
#include "henon/parallel.hpp"
#include "henon/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace henon {

Curve::Curve(std::vector<Term> terms) {
  for (const Term& t : terms) {
    if (t.i < 0 || t.j < 0) throw std::invalid_argument("Curve: negative exponent");
    if (t.c == cd(0.0)) continue;
    auto it = std::find_if(terms_.begin(), terms_.end(), [&](const Term& s) { return s.i == t.i && s.j == t.j; });
    if (it != terms_.end()) it->c += t.c;
    else terms_.push_back(t);
  }
  std::erase_if(terms_, [](const Term& t) { return t.c == cd(0.0); });
  for (const Term& t : terms_) degree_ = std::max(degree_, t.i + t.j);
  if (degree_ < 1) throw std::invalid_argument("Curve: P must have degree >= 1");
  const bool leading_z1 = std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.i == degree_; });
  if (!leading_z1) throw std::invalid_argument("Curve: closure of {P = 0} contains I- (no z1^deg term)");
}

cd Curve::operator()(const Point& z) const {
  cd s = 0.0;
  for (const Term& t : terms_) s += t.c * std::pow(z(0), t.i) * std::pow(z(1), t.j);
  return s;
}

double Curve::log_abs(const ExtPoint& z) const {
  std::vector<ExtComplex> values;
  values.reserve(terms_.size());
  std::int64_t top = std::numeric_limits<std::int64_t>::min();
  for (const Term& t : terms_) {
    ExtComplex v(t.c);
    for (int k = 0; k < t.i; ++k) v *= z.z1;
    for (int k = 0; k < t.j; ++k) v *= z.z2;
    if (!v.is_zero()) top = std::max(top, v.exponent());
    values.push_back(v);
  }
  if (top == std::numeric_limits<std::int64_t>::min()) return kNegInf;
  cd sum = 0.0;
  for (const ExtComplex& v : values) {
    if (v.is_zero() || top - v.exponent() > 1000) continue;
    sum += std::ldexp(1.0, static_cast<int>(v.exponent() - top)) * v.mantissa();
  }
  return std::log(std::abs(sum)) + static_cast<double>(top) * kLn2;
}

PotentialField pullback_potential(const HenonMap& f, const Curve& v, int n) {
  if (n < 0) throw std::invalid_argument("pullback_potential: n must be >= 0");
  const double scale = std::pow(static_cast<double>(f.degree()), -n) / v.degree();
  int dmax = 2;
  for (const auto& h : f.factors()) dmax = std::max(dmax, h.degree());
  const double switch_abs = std::exp(600.0 / dmax);
  auto eval = [f, v, n, scale, switch_abs](const Point& z) {
    cd z1 = z(0), z2 = z(1);
    int k = 0;
    for (; k < n && std::max(std::abs(z1), std::abs(z2)) < switch_abs; ++k) f.forward(z1, z2);
    if (k == n && std::max(std::abs(z1), std::abs(z2)) < switch_abs) return scale * std::log(std::abs(v(Point(z1, z2))));
    ExtPoint w(Point(z1, z2));
    for (; k < n; ++k) f.forward(w.z1, w.z2);
    return scale * v.log_abs(w);
  };
  return {eval, "pullback n=" + std::to_string(n)};
}

namespace {

// Least squares y = -rate x + b.
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    sxx += x[k] * x[k];
    sxy += x[k] * y[k];
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return {-slope, (sy - slope * sx) / m};
}

}  // namespace

EquidistReport equidist_experiment(const HenonMap& f, const Curve& v, const std::vector<TestForm>& psi,
                                   const std::vector<int>& n_range, const EquidistOptions& options) {
  if (psi.empty()) throw std::invalid_argument("equidist_experiment: needs at least one test form");
  if (n_range.empty()) throw std::invalid_argument("equidist_experiment: empty n range");
  EquidistReport report;
  report.n = n_range;
  const PotentialField green = green_potential(f, options.green_tol);
  std::vector<double> reference(psi.size());
  double scale = 0.0;
  for (std::size_t k = 0; k < psi.size(); ++k) {
    reference[k] = pair_form(green, psi[k], options.quadrature);
    scale = std::max(scale, std::abs(reference[k]));
  }
  for (int n : n_range) {
    const PotentialField u = pullback_potential(f, v, n);
    double e = 0.0;
    for (std::size_t k = 0; k < psi.size(); ++k)
      e = std::max(e, std::abs(pair_form(u, psi[k], options.quadrature) - reference[k]));
    report.errors.push_back(e);
  }

  const int count = static_cast<int>(n_range.size());
  const double floor = options.noise_floor * std::max(scale, 1e-300);
  int last = -1;
  while (last + 1 < count && report.errors[last + 1] > floor) ++last;
  int first = last;
  while (first > 0 && report.errors[first - 1] > report.errors[first]) --first;
  report.first_used = first;
  report.last_used = last;
  const double log_d = std::log(static_cast<double>(f.degree()));
  auto shape = [&](int n) { return options.log_n_term && n > 0 ? static_cast<double>(n) : 1.0; };
  if (last < 0 || last - first < 1) {
    report.saturated = true;
  } else {
    std::vector<double> x, y;
    for (int k = first; k <= last; ++k) {
      x.push_back(n_range[k]);
      y.push_back(std::log(report.errors[k] / shape(n_range[k])));
      report.bound_constant =
          std::max(report.bound_constant, report.errors[k] * std::exp(n_range[k] * log_d) / shape(n_range[k]));
    }
    const auto [rate, b] = fit_line(x, y);
    report.fitted_rate = rate;
    report.fitted_constant = std::exp(b);
  }
  for (int n : n_range) report.bound_model.push_back(report.bound_constant * shape(n) * std::exp(-n * log_d));
  return report;
}

std::vector<TestForm> default_test_forms(const HenonMap& f, double rho, int budget) {
  const auto fixed = periodic_points(f, 1);
  if (fixed.points.empty()) throw NumericalError("default_test_forms: no fixed point found");
  const Point z0 = fixed.points.front().point;
  std::vector<TestForm> out;
  for (int k = 0; k < 3; ++k) {
    const cd dir = std::polar(1.0, 2.0 * kPi * k / 3.0);
    auto escapes = [&](double s) { return classify_forward(f, z0 + Point(s * dir, 0.0), budget).escaping(); };
    double lo = 0.0, hi = 1.0;
    while (!escapes(hi)) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e6) throw NumericalError("default_test_forms: ray never leaves K+");
    }
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (escapes(mid) ? hi : lo) = mid;
    }
    out.emplace_back(z0 + Point(lo * dir, 0.0), rho);
  }
  return out;
}

}  // namespace henon
