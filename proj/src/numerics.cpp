#include "henon/numerics.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace henon {

void ExtComplex::assign(cd m, std::int64_t e) {
  if (m == cd(0.0, 0.0)) {
    m_ = cd(0.0, 0.0);
    e_ = 0;
    return;
  }
  int k = 0;
  std::frexp(std::abs(m), &k);
  m = cd(std::ldexp(m.real(), 1 - k), std::ldexp(m.imag(), 1 - k));
  e += k - 1;
  // hypot rounding can land exactly on a boundary
  double a = std::abs(m);
  if (a >= 2.0) {
    m *= 0.5;
    ++e;
  } else if (a < 1.0) {
    m *= 2.0;
    --e;
  }
  m_ = m;
  e_ = e;
}

cd ExtComplex::to_complex() const {
  if (is_zero()) return cd(0.0, 0.0);
  if (e_ > 1100) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return cd(m_.real() == 0.0 ? 0.0 : std::copysign(inf, m_.real()),
              m_.imag() == 0.0 ? 0.0 : std::copysign(inf, m_.imag()));
  }
  if (e_ < -1100) return cd(0.0, 0.0);
  const int k = static_cast<int>(e_);
  return cd(std::ldexp(m_.real(), k), std::ldexp(m_.imag(), k));
}

double ExtComplex::log_abs() const {
  if (is_zero()) return kNegInf;
  return std::log(std::abs(m_)) + static_cast<double>(e_) * kLn2;
}

double ext_log_abs(const ExtComplex& x) { return x.log_abs(); }

ExtComplex operator+(const ExtComplex& x, const ExtComplex& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  const std::int64_t d = x.e_ - y.e_;
  if (d > 64) return x;
  if (d < -64) return y;
  if (d >= 0) {
    const int s = static_cast<int>(-d);
    return ExtComplex(x.m_ + cd(std::ldexp(y.m_.real(), s), std::ldexp(y.m_.imag(), s)), x.e_);
  }
  const int s = static_cast<int>(d);
  return ExtComplex(y.m_ + cd(std::ldexp(x.m_.real(), s), std::ldexp(x.m_.imag(), s)), y.e_);
}

ExtComplex operator/(const ExtComplex& x, const ExtComplex& y) {
  if (y.is_zero()) throw NumericalError("ExtComplex division by zero");
  if (x.is_zero()) return x;
  return ExtComplex(x.m_ / y.m_, x.e_ - y.e_);
}

double ExtPoint::log_norm() const { return std::max(z1.log_abs(), z2.log_abs()); }

double log_add_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == kNegInf) return a;
  return a + std::log1p(std::exp(b - a));
}

// --- Poly -------------------------------------------------------------------

Poly::Poly(std::vector<cd> coefficients) : c_(std::move(coefficients)) { trim(); }

Poly Poly::monomial(int degree, cd coefficient) {
  std::vector<cd> c(static_cast<std::size_t>(degree) + 1, cd(0.0));
  c.back() = coefficient;
  return Poly(std::move(c));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == cd(0.0, 0.0)) c_.pop_back();
}

Poly Poly::derivative() const {
  if (degree() < 1) return Poly();
  std::vector<cd> d(c_.size() - 1);
  for (std::size_t j = 1; j < c_.size(); ++j) d[j - 1] = static_cast<double>(j) * c_[j];
  return Poly(std::move(d));
}

Poly Poly::shifted(cd shift) const {
  // Horner in polynomial arithmetic: exact up to rounding of the coefficients.
  Poly acc;
  const Poly x_plus({shift, cd(1.0)});
  for (int j = degree(); j >= 0; --j) acc = acc * x_plus + Poly::constant(c_[j]);
  return acc;
}

Poly Poly::compose(const Poly& q) const {
  Poly acc;
  for (int j = degree(); j >= 0; --j) acc = acc * q + Poly::constant(c_[j]);
  return acc;
}

double Poly::lower_coefficient_sum() const {
  double s = 0.0;
  for (int j = 0; j < degree(); ++j) s += std::abs(c_[j]);
  return s;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<cd> c(std::max(a.c_.size(), b.c_.size()), cd(0.0));
  for (std::size_t j = 0; j < a.c_.size(); ++j) c[j] += a.c_[j];
  for (std::size_t j = 0; j < b.c_.size(); ++j) c[j] += b.c_[j];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + cd(-1.0) * b; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<cd> c(a.c_.size() + b.c_.size() - 1, cd(0.0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(c));
}

Poly operator*(cd s, const Poly& a) {
  std::vector<cd> c = a.c_;
  for (auto& x : c) x *= s;
  return Poly(std::move(c));
}

ExtComplex poly_eval(const Poly& p, const ExtComplex& x) { return p(x); }

std::vector<cd> poly_roots(const Poly& p) {
  if (p.is_zero()) throw NumericalError("poly_roots: zero polynomial");
  const int n = p.degree();
  if (n < 1) throw NumericalError("poly_roots: constant polynomial has no roots");
  const auto& c = p.coefficients();
  const cd lead = c.back();

  std::vector<cd> roots;
  if (n == 1) {
    roots.push_back(-c[0] / lead);
    return roots;
  }

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[static_cast<std::size_t>(i)] / lead;

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NumericalError("poly_roots: eigenvalue iteration failed");

  const Poly dp = p.derivative();
  roots.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    cd r = solver.eigenvalues()(i);
    const cd f = p(r);
    const cd df = dp(r);
    if (df != cd(0.0)) {
      const cd polished = r - f / df;
      if (std::abs(p(polished)) < std::abs(f)) r = polished;
    }
    roots.push_back(r);
  }
  return roots;
}

Poly poly_from_roots(const std::vector<cd>& roots, cd leading) {
  Poly acc = Poly::constant(leading);
  for (const cd& r : roots) acc = acc * Poly({-r, cd(1.0)});
  return acc;
}

}  // namespace henon
