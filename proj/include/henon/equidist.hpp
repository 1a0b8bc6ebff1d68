#pragma once

#include "henon/currents.hpp"
#include "henon/map.hpp"

#include <optional>
#include <string>
#include <vector>

namespace henon {

/// Plane curve {P = 0}, P = sum c z1^i z2^j.
class Curve {
 public:
  struct Term {
    int i = 0;
    int j = 0;
    cd c;
  };

  /// Throws std::invalid_argument if P is 0, constant, or its closure passes
  /// through I- (the z1^deg coefficient vanishes).
  explicit Curve(std::vector<Term> terms);
  /// {z1 = 0}.
  static Curve z1_axis() { return Curve({{1, 0, 1.0}}); }

  const std::vector<Term>& terms() const { return terms_; }
  int degree() const { return degree_; }

  cd operator()(const Point& z) const;
  /// log|P(z)| for points far outside the double range: terms are summed
  /// after factoring out the largest binary exponent.
  double log_abs(const ExtPoint& z) const;

 private:
  std::vector<Term> terms_;
  int degree_ = 0;
};

/// u_n(z) = d^{-n} (deg V)^{-1} log|P(f^n(z))|, a potential of d^{-n} (f^n)^*[V] / deg V.
/// Throws std::invalid_argument for n < 0.
PotentialField pullback_potential(const HenonMap& f, const Curve& v, int n);

struct EquidistOptions {
  int quadrature = 32;
  double green_tol = 1e-10;
  double noise_floor = 1e-6;
  /// Fit log(e_n / n) instead of log e_n, matching the c n d^{-n} bound shape.
  bool log_n_term = false;
};

struct EquidistReport {
  std::vector<int> n;
  std::vector<double> errors;
  /// c n^k d^{-n} with the smallest c that bounds every usable e_n.
  std::vector<double> bound_model;
  double fitted_rate = 0.0;
  double fitted_constant = 0.0;
  double bound_constant = 0.0;
  int first_used = 0;
  int last_used = -1;
  bool saturated = false;
};

/// e_n = max over psi of |<u_n, psi> - <G+, psi>|, each by pair_form. The fit
/// range starts after the burn-in (the longest strictly decreasing tail) and
/// stops at the noise floor, relative to max |<G+, psi>|.
EquidistReport equidist_experiment(const HenonMap& f, const Curve& v, const std::vector<TestForm>& psi,
                                   const std::vector<int>& n_range, const EquidistOptions& options = {});

/// Three bumps of radius rho centered on points of J+ found by bisection with
/// classify along rays from a fixed point, in the z1 direction at angles
/// 0, 2pi/3, 4pi/3.
std::vector<TestForm> default_test_forms(const HenonMap& f, double rho = 0.8, int budget = 8);

}  // namespace henon
