#pragma once

#include "henon/green.hpp"

#include <functional>
#include <string>

namespace henon {

/// Holomorphic family c -> f_c of Hénon type maps of constant degree; the
/// parameter is a point of C^2 (families in C use the first coordinate).
class Family {
 public:
  /// Throws std::invalid_argument if degree < 2.
  Family(std::function<HenonMap(const Point&)> builder, int degree, std::string label);

  /// p = z^2 + c1, a = c2.
  static Family quadratic();
  /// p = z^2 + c1 with a fixed.
  static Family quadratic_fixed_a(cd a);

  /// Throws std::invalid_argument if f_c does not have the family degree.
  HenonMap operator()(const Point& c) const;
  int degree() const { return degree_; }
  const std::string& label() const { return label_; }

 private:
  std::function<HenonMap(const Point&)> builder_;
  int degree_;
  std::string label_;
};

/// The fibered Green function G+(c, z) = G+_{f_c}(z).
GreenValue family_green(const Family& fam, const Point& c, const Point& z, double tol, int budget = kDefaultBudget);

struct ParamScan {
  Grid<GreenValue> green;
  Grid<OrbitTag> forward;
};

/// G+(c, z0) and the forward class of z0 at the nodes of a window in the
/// t-plane of a complex line c(t) in parameter space (grid layout as in render_green).
ParamScan param_scan(const Family& fam, const Point& z0, const ComplexLine& params, const Rect& window, int width,
                     int height, double tol, int budget = kDefaultBudget);

}  // namespace henon
