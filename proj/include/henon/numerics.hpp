#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace henon {

using cd = std::complex<double>;
using Point = Eigen::Vector2cd;
using Matrix2 = Eigen::Matrix2cd;

/// Raised when a computation cannot meet a numerical precondition
/// (degenerate polynomial, failed residual check, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kLn2 = 0.69314718055994530941723212145818;
inline constexpr double kPi = 3.14159265358979323846264338327950;
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Complex number with a software binary exponent: value = mantissa * 2^exponent.
/// The mantissa modulus is kept in [1, 2) unless the value is exactly zero, so
/// orbits growing like C^(d^n) can be followed for many iterations without
/// overflow. Only the mantissa carries rounding; exponents are exact.
class ExtComplex {
 public:
  ExtComplex() = default;
  ExtComplex(double x) : ExtComplex(cd(x, 0.0)) {}  // NOLINT
  ExtComplex(cd z) { assign(z, 0); }                // NOLINT
  ExtComplex(cd mantissa, std::int64_t exponent) { assign(mantissa, exponent); }

  const cd& mantissa() const { return m_; }
  std::int64_t exponent() const { return e_; }
  bool is_zero() const { return m_ == cd(0.0, 0.0); }

  /// Plain complex value; saturates to inf / flushes to 0 outside double range.
  cd to_complex() const;

  /// log|x|; negative infinity for zero.
  double log_abs() const;

  ExtComplex conj() const { return ExtComplex::raw(std::conj(m_), e_); }
  ExtComplex operator-() const { return ExtComplex::raw(-m_, e_); }
  /// Multiply by 2^k exactly.
  ExtComplex ldexp(std::int64_t k) const { return is_zero() ? *this : raw(m_, e_ + k); }

  ExtComplex& operator+=(const ExtComplex& o) { return *this = *this + o; }
  ExtComplex& operator-=(const ExtComplex& o) { return *this = *this - o; }
  ExtComplex& operator*=(const ExtComplex& o) { return *this = *this * o; }
  ExtComplex& operator/=(const ExtComplex& o) { return *this = *this / o; }

  friend ExtComplex operator+(const ExtComplex& x, const ExtComplex& y);
  friend ExtComplex operator-(const ExtComplex& x, const ExtComplex& y) { return x + (-y); }
  friend ExtComplex operator*(const ExtComplex& x, const ExtComplex& y) {
    return ExtComplex(x.m_ * y.m_, x.e_ + y.e_);
  }
  friend ExtComplex operator/(const ExtComplex& x, const ExtComplex& y);
  friend bool operator==(const ExtComplex& x, const ExtComplex& y) {
    return x.m_ == y.m_ && x.e_ == y.e_;
  }

 private:
  static ExtComplex raw(cd m, std::int64_t e) {
    ExtComplex r;
    r.m_ = m;
    r.e_ = e;
    return r;
  }
  void assign(cd m, std::int64_t e);

  cd m_{0.0, 0.0};
  std::int64_t e_ = 0;
};

double ext_log_abs(const ExtComplex& x);

/// Pair of extended-range complex numbers (a point of C^2).
struct ExtPoint {
  ExtComplex z1;
  ExtComplex z2;

  ExtPoint() = default;
  ExtPoint(ExtComplex a, ExtComplex b) : z1(a), z2(b) {}
  explicit ExtPoint(const Point& p) : z1(p(0)), z2(p(1)) {}
  Point to_point() const { return Point(z1.to_complex(), z2.to_complex()); }
  /// log of the sup norm max(|z1|, |z2|).
  double log_norm() const;
};

/// log(exp(a) + exp(b)) without overflow; handles -inf operands.
double log_add_exp(double a, double b);

/// Dense one-variable complex polynomial, lowest degree first. Trailing zero
/// coefficients are trimmed so the leading coefficient is nonzero unless the
/// polynomial is identically zero.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<cd> coefficients);
  static Poly monomial(int degree, cd coefficient = 1.0);
  static Poly constant(cd c) { return Poly({c}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<cd>& coefficients() const { return c_; }
  cd coefficient(int j) const { return j >= 0 && j < static_cast<int>(c_.size()) ? c_[j] : cd(0.0); }
  cd leading() const { return c_.empty() ? cd(0.0) : c_.back(); }

  template <class Scalar>
  Scalar operator()(const Scalar& x) const {
    if (c_.empty()) return Scalar(cd(0.0));
    Scalar acc(c_.back());
    for (int j = degree() - 1; j >= 0; --j) acc = acc * x + Scalar(c_[j]);
    return acc;
  }

  Poly derivative() const;
  /// p(x + shift) as a polynomial in x.
  Poly shifted(cd shift) const;
  /// (*this)(q(x)).
  Poly compose(const Poly& q) const;
  /// Sum of |c_j| for j below the leading degree.
  double lower_coefficient_sum() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(cd s, const Poly& a);

 private:
  void trim();
  std::vector<cd> c_;
};

/// Horner evaluation in extended arithmetic.
ExtComplex poly_eval(const Poly& p, const ExtComplex& x);

/// All roots with multiplicity: companion-matrix eigenvalues, then one Newton
/// polish step per root (kept only when it lowers the residual).
/// Throws NumericalError for the zero polynomial or a constant.
std::vector<cd> poly_roots(const Poly& p);

/// Polynomial with the given roots times `leading`.
Poly poly_from_roots(const std::vector<cd>& roots, cd leading = 1.0);

}  // namespace henon
