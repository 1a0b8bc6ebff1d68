#pragma once

#include "henon/numerics.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace henon {

/// One Hénon factor h(z1, z2) = (p(z1) + a z2, z1) with deg p >= 2, a != 0.
class HenonFactor {
 public:
  HenonFactor(Poly p, cd a);

  const Poly& p() const { return p_; }
  cd a() const { return a_; }
  int degree() const { return p_.degree(); }

  template <class Scalar>
  void forward(Scalar& z1, Scalar& z2) const {
    Scalar w1 = p_(z1) + Scalar(a_) * z2;
    z2 = z1;
    z1 = w1;
  }

  /// h^{-1}(z1, z2) = (z2, (z1 - p(z2)) / a).
  template <class Scalar>
  void backward(Scalar& z1, Scalar& z2) const {
    Scalar w2 = (z1 - p_(z2)) * Scalar(inv_a_);
    z1 = z2;
    z2 = w2;
  }

  Matrix2 jacobian(cd z1) const;
  /// Derivative of h^{-1} at (z1, z2); depends on z2 only.
  Matrix2 inverse_jacobian(cd z2) const;

 private:
  Poly p_;
  Poly dp_;
  cd a_;
  cd inv_a_;
};

/// On {|z1| >= max(|z2|, radius)} one application multiplies |z1| by at least
/// `growth` and stays in the region.
struct EscapeCert {
  double radius = 0.0;
  double growth = 2.0;
};

/// Indeterminacy points of the projective extension, in homogeneous
/// coordinates [w0 : w1 : w2]. Identical for every Hénon type map.
struct ProjectiveBehavior {
  static constexpr std::array<int, 3> i_plus{0, 0, 1};
  static constexpr std::array<int, 3> i_minus{0, 1, 0};
};

/// Finite composition h_1 o ... o h_m of Hénon factors. Factors are listed left
/// to right and applied right to left.
class HenonMap {
 public:
  explicit HenonMap(std::vector<HenonFactor> factors);

  /// Single factor with p(z) = z^2 + c.
  static HenonMap quadratic(cd c, cd a);
  static HenonMap single(Poly p, cd a) { return HenonMap({HenonFactor(std::move(p), a)}); }

  const std::vector<HenonFactor>& factors() const { return factors_; }
  int degree() const { return degree_; }
  cd jacobian_det() const { return jacobian_det_; }
  const EscapeCert& certificate() const { return cert_; }
  /// Radius of the backward certificate on {|z2| >= max(|z1|, R)}.
  double backward_radius() const { return backward_radius_; }

  /// The Hénon type map g with f^{-1} = s o g o s, s(z1, z2) = (z2, z1).
  HenonMap inverse_conjugate() const;
  /// f^n as a composition of n copies of the factor list.
  HenonMap iterate(int n) const;

  template <class Scalar>
  void forward(Scalar& z1, Scalar& z2) const {
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) it->forward(z1, z2);
  }
  template <class Scalar>
  void backward(Scalar& z1, Scalar& z2) const {
    for (const auto& h : factors_) h.backward(z1, z2);
  }

 private:
  std::vector<HenonFactor> factors_;
  int degree_ = 1;
  cd jacobian_det_ = 1.0;
  EscapeCert cert_;
  double backward_radius_ = 0.0;
};

/// f o g.
HenonMap compose(const HenonMap& f, const HenonMap& g);

Point apply(const HenonMap& f, const Point& z);
ExtPoint apply(const HenonMap& f, const ExtPoint& z);
Point apply_inverse(const HenonMap& f, const Point& z);
ExtPoint apply_inverse(const HenonMap& f, const ExtPoint& z);

/// Chain-rule product of the factor Jacobians [[p'(z1), a], [1, 0]].
Matrix2 jacobian(const HenonMap& f, const Point& z);
/// Derivative of f^{-1} at z.
Matrix2 inverse_jacobian(const HenonMap& f, const Point& z);

/// radius = max over factors of max(1, (|a| + 2 + sum_{j<d} |c_j|) / |c_d|),
/// growth = 2.
EscapeCert escape_certificate(const HenonMap& f);

/// Parses the map description format: one factor per line,
/// `factor a=<re>,<im> p=<c0re>,<c0im>,...,<cdre>,<cdim>`. Blank lines and
/// `#` comments are ignored; `;` also separates factors. Throws
/// std::invalid_argument naming the offending token.
HenonMap parse_map(std::string_view text);
std::string format_map(const HenonMap& f);

/// Parses "re,im" (or a bare real).
cd parse_complex(std::string_view text);
std::string format_double(double x);

}  // namespace henon
