#pragma once

#include "henon/currents.hpp"
#include "henon/map.hpp"

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace henon {

/// Value and derivative of a holomorphic curve at one parameter.
struct CurveJet {
  ExtPoint value;
  ExtPoint derivative;
};

/// xi -> (phi(xi), phi'(xi)) with exhaustion sigma(xi) = |xi|.
struct ParametrizedCurve {
  std::function<CurveJet(cd)> jet;
  double domain_radius = std::numeric_limits<double>::infinity();
  std::string label;

  Point value(cd xi) const { return jet(xi).value.to_point(); }
  Point derivative(cd xi) const { return jet(xi).derivative.to_point(); }
};

/// xi -> (xi^k, 0), the test curves with closed-form areas.
ParametrizedCurve monomial_curve(int k);

/// Area form pulled back to the parameter disc. Fubini-Study is the Hermitian
/// form of P^2 (lines have mass 1); Euclidean is |phi'|^2 dA.
enum class AreaForm { FubiniStudy, Euclidean };

/// Density of phi^*(omega) with respect to Lebesgue measure on xi.
/// Fubini-Study: (|phi'|^2 + |phi1 phi2' - phi2 phi1'|^2) / (pi (1 + |phi|^2)^2).
double area_density(const CurveJet& j, AreaForm form);

struct Saddle {
  Point point;
  int period = 1;
  cd lambda_s;
  cd lambda_u;
  /// Unit stable eigenvector of D(f^period) at the point.
  Point v_s;
};

/// Throws NumericalError if the point is not a saddle of f^period (residual
/// > 1e-10 or no multiplier pair straddling the unit circle).
Saddle make_saddle(const HenonMap& f, const Point& point, int period = 1);

/// Largest rho with |f^k(z0 + w) - z0 - Df^k w| <= 0.1 |lambda_s| |w| for
/// |w| <= rho, by bisection over a fixed set of directions.
double linearization_radius(const HenonMap& f, const Saddle& s);

/// psi(xi) = f^{-kn}(z0 + lambda_s^n xi v_s), iterated in coordinates relative
/// to the periodic orbit while the deviation is small, then absolutely, then
/// in extended range. Checks f^k(psi(xi)) = psi(lambda_s xi) on |xi| <= r
/// (relative to 1 + |psi| + |xi psi'|, at 64 angles on several radii) and
/// throws NumericalError naming the worst xi if it exceeds 1e-8.
/// Throws std::invalid_argument if |lambda_s|^n r exceeds the linearization radius.
ParametrizedCurve stable_manifold(const HenonMap& f, const Saddle& s, int n, double r);
/// Smallest depth with |lambda_s|^n r <= 1e-12 rho_lin.
int stable_manifold_depth(const HenonMap& f, const Saddle& s, double r);
double functional_equation_residual(const HenonMap& f, const Saddle& s, const ParametrizedCurve& c, double r,
                                    cd* worst = nullptr);

struct NevanlinnaOptions {
  AreaForm form = AreaForm::FubiniStudy;
  /// Initial polar cells: `sectors` in angle times radial intervals with
  /// ratio `annulus_ratio`; each cell carries a 7 x 7 Kronrod rule in
  /// (log rho, theta) with the embedded 3 x 3 Gauss rule as error estimate.
  int sectors = 64;
  double annulus_ratio = 1.5;
  /// Cells are split until the summed error estimate is below rel_tol times
  /// the integral, per component, or max_cells is reached.
  double rel_tol = 1e-6;
  int max_cells = 400000;
  /// Inner disc radius relative to the smallest r; the density is taken constant there.
  double inner_fraction = 1e-7;
};

/// A(t) = int_{|xi| < t} phi^*(omega).
double area_function(const ParametrizedCurve& c, double t, const NevanlinnaOptions& o = {});
/// T(r) = int_0^r A(t) / t dt, evaluated as int_{|xi| < r} log(r / |xi|) phi^*(omega).
double characteristic(const ParametrizedCurve& c, double r, const NevanlinnaOptions& o = {});

struct NevanlinnaPairing {
  double r = 0.0;
  double T_r = 0.0;
  /// <tau_r, chi beta>, beta = i dz1 ^ dz1bar + i dz2 ^ dz2bar, one per test form.
  std::vector<double> tau_psi;
  /// <tau_r, omega>: the T(r) integral divided by T(r).
  double full_mass = 0.0;
  /// |nu_r| / T(r) with |nu_r| = 1: exactly 1 / T(r).
  double ddc_mass_proxy = 0.0;
  /// Summed relative error estimate of the cubature (worst component).
  double error_estimate = 0.0;
  /// The cell budget ran out before rel_tol was met.
  bool unresolved = false;
};

/// Pairings for every r in r_list (sorted ascending) in one radial sweep.
/// Throws std::invalid_argument for empty or non-positive radii and
/// NumericalError if some T(r) <= 0.
std::vector<NevanlinnaPairing> tau_pairings(const ParametrizedCurve& c, const std::vector<double>& r_list,
                                            const std::vector<TestForm>& psi, const NevanlinnaOptions& o = {});
NevanlinnaPairing tau_pairing(const ParametrizedCurve& c, double r, const TestForm& psi,
                              const NevanlinnaOptions& o = {});

/// Length of phi(|xi| = r) in the metric of the area form, divided by A(r).
double ahlfors_ratio(const ParametrizedCurve& c, double r, const NevanlinnaOptions& o = {});

struct RigidityRow {
  double r = 0.0;
  int psi_id = 0;
  double tau_psi = 0.0;
  double tplus_psi = 0.0;
  double abs_diff = 0.0;
  double T_r = 0.0;
  double ddc_mass_proxy = 0.0;
  double full_mass = 0.0;
};

struct RigidityOptions {
  NevanlinnaOptions nevanlinna;
  int quadrature = 32;
  double green_tol = 1e-10;
  /// Samples of G+ on the curve for the K+ membership precondition.
  int membership_samples = 64;
};

/// |<tau_r - T+, psi>| over r_list x psi_list. The curve is the stable
/// manifold of s at the depth needed for max(r_list); its image must lie in
/// K+ (G+ <= 1e-6 on samples), else NumericalError.
std::vector<RigidityRow> rigidity_experiment(const HenonMap& f, const Saddle& s, const std::vector<double>& r_list,
                                             const std::vector<TestForm>& psi, const RigidityOptions& o = {});

}  // namespace henon
