#include "commands.hpp"
#include "output.hpp"
#include "tables.hpp"

#include "henon/currents.hpp"
#include "henon/equidist.hpp"
#include "henon/green.hpp"
#include "henon/nevanlinna.hpp"
#include "henon/parallel.hpp"
#include "henon/periodic.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>

namespace henon::cli {

namespace fs = std::filesystem;

namespace {

const HenonMap kQuad = HenonMap::quadratic(-1.1, 0.4);

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

std::vector<Point> uniform_points(std::uint64_t seed, int count, double lo, double hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<Point> pts(count);
  for (auto& z : pts) {
    const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    z = Point(cd(a, b), cd(c, d));
  }
  return pts;
}

struct Outcome {
  bool pass = false;
  std::string detail;
  /// Headline value recorded in summary.csv.
  double measured = 0.0;
};

// 1. G+(f z) = 2 G+(z) on random points of [-3, 3]^4.
Outcome green_invariance(const fs::path& out) {
  constexpr double tol = 1e-8;
  const auto pts = uniform_points(1, 10000, -3.0, 3.0);
  std::vector<double> g(pts.size()), gf(pts.size());
  parallel_for(pts.size(), [&](std::size_t k) {
    g[k] = green_plus(kQuad, pts[k], tol).value;
    gf[k] = green_plus(kQuad, henon::apply(kQuad, pts[k]), tol).value;
  });
  Csv csv({"re1", "im1", "re2", "im2", "g_plus", "g_plus_image", "defect"});
  double worst = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double defect = std::abs(gf[k] - 2.0 * g[k]);
    worst = std::max(worst, defect);
    csv << pts[k](0).real() << pts[k](0).imag() << pts[k](1).real() << pts[k](1).imag() << g[k] << gf[k] << defect;
    csv.end_row();
  }
  csv.footer("max_defect", worst);
  csv.save(out / "c1_green_invariance.csv");
  return {worst <= 5.0 * tol, "max |G(f z) - 2 G(z)| = " + num(worst) + " <= 5e-08", worst};
}

// 2. Points classified bounded at budget 2048 have G+ exactly 0.
Outcome vanishing_on_k_plus(const fs::path& out) {
  struct Probe {
    std::string label;
    HenonMap f;
    std::vector<Point> points;
  };
  // p = z^2 - 0.1, a = 0.2 has an attracting fixed point, so K+ has interior;
  // for p = z^2 - 1.1, a = 0.4 the bounded points are periodic orbits
  std::vector<Point> periodic;
  for (int n : {1, 2, 3})
    for (const auto& p : periodic_points(kQuad, n).points) periodic.push_back(p.point);
  const std::vector<Probe> probes = {
      {"p=z^2-0.1,a=0.2 random", HenonMap::quadratic(-0.1, 0.2), uniform_points(2, 4000, -1.5, 1.5)},
      {"p=z^2-1.1,a=0.4 random", kQuad, uniform_points(3, 4000, -3.0, 3.0)},
      {"p=z^2-1.1,a=0.4 periodic", kQuad, periodic},
  };
  Csv csv({"set", "points", "bounded", "nonzero_values", "max_error_bound"});
  int bounded_total = 0, bad_total = 0;
  for (const auto& probe : probes) {
    std::vector<int> bounded(probe.points.size(), 0), bad(probe.points.size(), 0);
    std::vector<double> bound(probe.points.size(), 0.0);
    parallel_for(probe.points.size(), [&](std::size_t k) {
      if (classify_forward(probe.f, probe.points[k], kDefaultBudget).escaping()) return;
      bounded[k] = 1;
      const GreenValue g = green_plus(probe.f, probe.points[k], 1e-10, kDefaultBudget);
      bound[k] = g.error_bound;
      bad[k] = g.value != 0.0 || g.error_bound > 1e-6;
    });
    int nb = 0, nbad = 0;
    double worst = 0.0;
    for (std::size_t k = 0; k < probe.points.size(); ++k) {
      nb += bounded[k];
      nbad += bad[k];
      worst = std::max(worst, bound[k]);
    }
    csv << probe.label << static_cast<int>(probe.points.size()) << nb << nbad << worst;
    csv.end_row();
    bounded_total += nb;
    bad_total += nbad;
  }
  csv.save(out / "c2_vanishing.csv");
  return {bounded_total > 0 && bad_total == 0,
          std::to_string(bounded_total) + " bounded points, " + std::to_string(bad_total) +
              " with G != 0 or error_bound > 1e-6",
          static_cast<double>(bad_total)};
}

// 3. Slice of T+ along z2 = 0 has mass 1.
Outcome slice_mass(const fs::path& out) {
  const SliceMeasure m = slice(green_potential(kQuad), ComplexLine::horizontal(0.0), Rect::centered(0.0, 3.0), 2048);
  slice_table(coarsen(m, 32)).save(out / "c3_slice_64.csv");
  const bool pass = m.total_mass >= 0.97 && m.total_mass <= 1.03;
  return {pass, "total mass " + num(m.total_mass) + " in [0.97, 1.03] at 2048^2", m.total_mass};
}

// 2 * integral of chi(0, w) over the w-plane by a polar midpoint rule: the
// integration current of {z1 = 0} paired with chi beta.
double direct_slice_integral(const TestForm& psi, int radial, int angular) {
  double s = 0.0;
  const double dr = psi.rho / radial, da = 2.0 * kPi / angular;
  for (int i = 0; i < radial; ++i) {
    const double r = (i + 0.5) * dr;
    for (int k = 0; k < angular; ++k)
      s += psi.chi(Point(0.0, psi.center(1) + std::polar(r, (k + 0.5) * da))) * r * dr * da;
  }
  return 2.0 * s;
}

// 4. pair_form of dd^c log|z1| against the slice integral over {z1 = 0}.
Outcome poincare_lelong(const fs::path& out) {
  const TestForm psi(Point(cd(0.25, 0.0), cd(0.0, 0.1)), 1.0);
  const double oracle = direct_slice_integral(psi, 2000, 2000);
  const double paired = pair_form(log_abs_z1(), psi, 256);
  const double rel = std::abs(paired / oracle - 1.0);
  Csv csv({"pair_form", "oracle", "relative_difference"});
  csv << paired << oracle << rel;
  csv.end_row();
  csv.save(out / "c4_poincare_lelong.csv");
  return {rel <= 0.01, "pair_form " + num(paired) + " vs oracle " + num(oracle) + ", rel diff " + num(rel) + " <= 0.01",
          rel};
}

HenonMap random_map(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> rad(0.0, 1.0), ang(0.0, 2.0 * kPi), amod(0.3, 3.0);
  std::uniform_int_distribution<int> deg(2, 3);
  const int d = deg(rng);
  std::vector<cd> c(d + 1);
  for (auto& x : c) x = std::polar(rad(rng), ang(rng));
  if (std::abs(c.back()) < 0.2) c.back() = std::polar(0.5, ang(rng));
  return HenonMap::single(Poly(c), std::polar(amod(rng), ang(rng)));
}

// 5. d^n periodic points of period n, residuals and multiplier products.
Outcome periodic_count(const fs::path& out) {
  std::mt19937_64 rng(5);
  Csv csv({"map", "degree", "n", "method", "count", "expected", "complete", "degenerate", "max_residual",
           "max_multiplier_defect"});
  bool pass = true;
  int degenerate = 0;
  double worst_residual = 0.0, worst_mult = 0.0;
  auto check = [&](int k, const HenonMap& f, int n, const char* method, const std::vector<PeriodicPoint>& pts,
                   int expected, bool complete, bool degen) {
    const cd detn = std::pow(f.jacobian_det(), n);
    double res = 0.0, mult = 0.0;
    for (const auto& p : pts) {
      res = std::max(res, p.residual);
      mult = std::max(mult, std::abs(p.mult1 * p.mult2 - detn) / std::abs(detn));
    }
    worst_residual = std::max(worst_residual, res);
    worst_mult = std::max(worst_mult, mult);
    pass = pass && res <= 1e-10 && mult <= 1e-8 && (complete || degen);
    csv << k << f.degree() << n << std::string(method) << static_cast<int>(pts.size()) << expected
        << std::string(complete ? "true" : "false") << std::string(degen ? "true" : "false") << res << mult;
    csv.end_row();
  };
  for (int k = 0; k < 10; ++k) {
    const HenonMap f = random_map(rng);
    const auto exact = fixed_points_exact(f);
    const int d = f.degree();
    check(k, f, 1, "exact", exact, d, static_cast<int>(exact.size()) == d, false);
    const PeriodicSearch s = periodic_points(f, 2);
    degenerate += s.degenerate;
    check(k, f, 2, "newton", s.points, s.expected, s.complete, s.degenerate);
  }
  csv.save(out / "c5_periodic.csv");
  return {pass,
          "max residual " + num(worst_residual) + " <= 1e-10, max |m1 m2 / det^n - 1| " + num(worst_mult) +
              " <= 1e-08, " + std::to_string(degenerate) + " degenerate",
          worst_residual};
}

// 6. Equidistribution of d^{-n} (f^n)^*[z1 = 0] at rate log 2.
Outcome equidistribution(const fs::path& out) {
  std::vector<int> ns;
  for (int n = 1; n <= 10; ++n) ns.push_back(n);
  EquidistOptions o;
  o.quadrature = 32;
  const EquidistReport r = equidist_experiment(kQuad, Curve::z1_axis(), default_test_forms(kQuad), ns, o);
  equidist_table(r).save(out / "c6_equidist.csv");
  bool monotone = r.last_used > r.first_used;
  for (int k = r.first_used + 1; k <= r.last_used; ++k) monotone = monotone && r.errors[k] < r.errors[k - 1];
  const double rel = std::abs(r.fitted_rate / kLn2 - 1.0);
  return {rel <= 0.15 && monotone,
          "fitted rate " + num(r.fitted_rate) + " vs log 2, rel diff " + num(rel) + " <= 0.15, fit over n = " +
              std::to_string(r.n[r.first_used]) + ".." + std::to_string(r.n[r.last_used]) +
              (monotone ? ", monotone" : ", not monotone"),
          r.fitted_rate};
}

// 7. Nevanlinna currents of the stable manifold of (-1, -1) for p = z^2, a = 2.
Outcome nevanlinna_normalization(const fs::path& out) {
  const HenonMap f = HenonMap::single(Poly::monomial(2), 2.0);
  const Saddle s = make_saddle(f, Point(-1.0, -1.0));
  // fixed point (x, x) with Jacobian [[2x, 2], [1, 0]]: lambda = x +- sqrt(x^2 + 2)
  const double x = -1.0;
  const double ls = x + std::sqrt(x * x + 2.0), lu = x - std::sqrt(x * x + 2.0);
  const double mult_err = std::max(std::abs(s.lambda_s - ls), std::abs(s.lambda_u - lu));
  const std::vector<double> radii = {0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
  const ParametrizedCurve c = stable_manifold(f, s, stable_manifold_depth(f, s, radii.back()), radii.back());
  const auto p = tau_pairings(c, radii, {TestForm(s.point, 0.5)});
  Csv csv({"r", "T_r", "full_mass", "ddc_mass_proxy", "ratio_to_previous"});
  bool pass = mult_err <= 1e-12;
  double worst_mass = 0.0, min_ratio = INFINITY;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double ratio = i ? p[i].T_r / p[i - 1].T_r : 0.0;
    if (i) min_ratio = std::min(min_ratio, ratio);
    worst_mass = std::max(worst_mass, std::abs(p[i].full_mass - 1.0));
    pass = pass && p[i].ddc_mass_proxy == 1.0 / p[i].T_r && (i == 0 || ratio > 1.5) && !p[i].unresolved;
    csv << p[i].r << p[i].T_r << p[i].full_mass << p[i].ddc_mass_proxy << ratio;
    csv.end_row();
  }
  csv.footer("multiplier_error", mult_err);
  csv.save(out / "c7_nevanlinna.csv");
  pass = pass && worst_mass <= 0.02;
  return {pass,
          "multipliers within " + num(mult_err) + " of -1 +- sqrt 3, max |full mass - 1| " + num(worst_mass) +
              " <= 0.02, min T(2r)/T(r) " + num(min_ratio) + " > 1.5",
          worst_mass};
}

// 8. |<tau_r - T+, psi>| shrinks by 3 from r = 1 to r = 1e7 for p = z^2 - 3, a = 0.2.
Outcome rigidity(const fs::path& out) {
  const HenonMap f = HenonMap::quadratic(-3.0, 0.2);
  const auto fixed = fixed_points_exact(f);
  Point two_cycle = fixed[0].point;
  for (const auto& p : period_two_exact(f))
    if (p.point(0) != p.point(1)) {
      two_cycle = p.point;
      break;
    }
  const std::vector<TestForm> forms = {TestForm(fixed[0].point, 0.8), TestForm(fixed[1].point, 0.8),
                                       TestForm(two_cycle, 0.8)};
  std::vector<double> radii;
  for (double r = 1.0; r <= 1e7; r *= 10.0) radii.push_back(r);
  RigidityOptions o;
  o.quadrature = 24;
  const auto rows = rigidity_experiment(f, make_saddle(f, fixed[0].point), radii, forms, o);
  rigidity_table(rows).save(out / "c8_rigidity.csv");
  bool pass = true;
  double worst = 0.0;
  std::string detail = "last / first |<tau_r - T+, psi>|:";
  for (int id = 0; id < static_cast<int>(forms.size()); ++id) {
    double first = 0.0, last = 0.0;
    for (const auto& r : rows)
      if (r.psi_id == id) {
        if (r.r == radii.front()) first = r.abs_diff;
        if (r.r == radii.back()) last = r.abs_diff;
      }
    const double q = last / first;
    worst = std::max(worst, q);
    pass = pass && last <= first / 3.0;
    detail += " " + num(q);
  }
  return {pass, detail + " <= 1/3", worst};
}

// 9. Holder estimate at depths 8 and 16, on the grid plus the points of period 1 and 2.
Outcome holder_stabilization(const fs::path& out) {
  HolderRegion region;
  for (int n : {1, 2})
    for (const auto& p : periodic_points(kQuad, n).points) region.extra_samples.push_back(p.point);
  const auto est = holder_exponent(kQuad, region, {8, 16});
  const double rel = std::abs(est[1].beta_hat - est[0].beta_hat) / est[0].beta_hat;
  Csv csv({"n", "beta_hat", "max_log_growth"});
  for (const auto& e : est) {
    csv << e.n << e.beta_hat << e.max_log_growth;
    csv.end_row();
  }
  csv.save(out / "c9_holder.csv");
  return {rel <= 0.10,
          "beta(8) " + num(est[0].beta_hat) + ", beta(16) " + num(est[1].beta_hat) + ", rel diff " + num(rel) +
              " <= 0.1",
          rel};
}

void julia_image(const fs::path& out) {
  const Grid<GreenValue> g = render_green(kQuad, ComplexLine::horizontal(0.0), Rect::centered(0.0, 2.0), 128, 128, 1e-10);
  double gmax = 0.0;
  for (const auto& v : g.data) gmax = std::max(gmax, v.value);
  std::vector<std::uint8_t> px(g.data.size());
  for (std::size_t k = 0; k < px.size(); ++k) px[k] = log_scale(g.data[k].value, gmax);
  write_file(out / "julia_128.pgm", pgm(g.width, g.height, px));
}

}  // namespace

std::string format_result(const CriterionResult& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s C%-2d %-28s ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str());
  char time[32];
  std::snprintf(time, sizeof time, " (%.1f s)", r.seconds);
  return buf + r.detail + time;
}

std::vector<CriterionResult> selftest(const RunConfig& c, std::ostream& log) {
  const fs::path out = fs::path(c.text("out"));
  fs::create_directories(out);
  struct Criterion {
    int id;
    std::string name;
    std::function<Outcome(const fs::path&)> run;
    double time_limit;
  };
  const std::vector<Criterion> criteria = {
      {1, "green invariance", green_invariance, 10.0},
      {2, "vanishing on K+", vanishing_on_k_plus, INFINITY},
      {3, "slice mass", slice_mass, 60.0},
      {4, "poincare-lelong calibration", poincare_lelong, INFINITY},
      {5, "periodic point count", periodic_count, INFINITY},
      {6, "equidistribution rate", equidistribution, 300.0},
      {7, "nevanlinna normalization", nevanlinna_normalization, INFINITY},
      {8, "rigidity convergence", rigidity, INFINITY},
      {9, "holder stabilization", holder_stabilization, INFINITY},
  };
  std::vector<CriterionResult> results;
  Csv summary({"criterion", "name", "measured", "within_threshold"});
  for (const auto& k : criteria) {
    CriterionResult r{k.id, k.name, false, "", 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = k.run(out);
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what(), NAN};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.pass = o.pass && r.seconds <= k.time_limit;
    r.detail = o.detail;
    if (std::isfinite(k.time_limit)) r.detail += ", runtime <= " + num(k.time_limit) + " s";
    summary << k.id << k.name << o.measured << std::string(o.pass ? "true" : "false");
    summary.end_row();
    log << format_result(r) << std::endl;
    results.push_back(r);
  }
  julia_image(out);
  summary.save(out / "summary.csv");
  return results;
}

}  // namespace henon::cli
