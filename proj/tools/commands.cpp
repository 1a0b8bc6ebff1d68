#include "commands.hpp"

#include "output.hpp"
#include "tables.hpp"

#include "henon/equidist.hpp"
#include "henon/family.hpp"
#include "henon/nevanlinna.hpp"
#include "henon/parallel.hpp"
#include "henon/periodic.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <sstream>

namespace henon::cli {

namespace fs = std::filesystem;

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"render-julia", "render-green", "slice",      "equidist",
                                                 "periodic",     "nevanlinna",   "param-scan", "selftest"};
  return names;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(item);
  return out;
}

std::vector<TestForm> test_forms(const RunConfig& c, const HenonMap& f) {
  const std::string text = c.text("forms");
  if (text == "default") return default_test_forms(f, c.real("rho"));
  std::vector<TestForm> forms;
  for (const auto& item : split(text, ';')) {
    const auto v = parse_real_list("forms", item);
    if (v.size() != 5) throw ConfigError("forms", "each form needs c1re,c1im,c2re,c2im,rho");
    if (!(v[4] > 0.0)) throw ConfigError("forms", "rho must be > 0");
    forms.emplace_back(Point(cd(v[0], v[1]), cd(v[2], v[3])), v[4]);
  }
  if (forms.empty()) throw ConfigError("forms", "no test forms");
  return forms;
}

Curve curve(const RunConfig& c) {
  std::vector<Curve::Term> terms;
  for (const auto& item : split(c.text("curve"), ';')) {
    const auto v = parse_real_list("curve", item);
    if (v.size() != 4 || v[0] < 0 || v[1] < 0 || v[0] != std::floor(v[0]) || v[1] != std::floor(v[1]))
      throw ConfigError("curve", "each term needs i,j,re,im with integer exponents");
    terms.push_back({static_cast<int>(v[0]), static_cast<int>(v[1]), cd(v[2], v[3])});
  }
  try {
    return Curve(std::move(terms));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("curve", e.what());
  }
}

int positive(const RunConfig& c, const std::string& key) {
  const int v = c.integer(key);
  if (v < 1) throw ConfigError(key, "must be >= 1");
  return v;
}

double positive_real(const RunConfig& c, const std::string& key) {
  const double v = c.real(key);
  if (!(v > 0.0)) throw ConfigError(key, "must be > 0");
  return v;
}

fs::path out_dir(const RunConfig& c) { return fs::path(c.text("out")); }

double grid_max(const Grid<GreenValue>& g) {
  double m = 0.0;
  for (const auto& v : g.data) m = std::max(m, v.value);
  return m;
}

double scale_max(const RunConfig& c, const Grid<GreenValue>& g) {
  const double gmax = c.real("gmax");
  if (gmax < 0.0) throw ConfigError("gmax", "must be >= 0");
  return gmax > 0.0 ? gmax : grid_max(g);
}

std::vector<std::uint8_t> scaled_pixels(const Grid<GreenValue>& g, double gmax) {
  std::vector<std::uint8_t> px(g.data.size());
  for (std::size_t k = 0; k < px.size(); ++k) px[k] = log_scale(g.data[k].value, gmax);
  return px;
}

Grid<GreenValue> green_grid(const RunConfig& c, const HenonMap& f) {
  return render_green(f, c.line(), c.window(), positive(c, "width"), positive(c, "height"),
                      positive_real(c, "tol"), positive(c, "budget"));
}

int render_julia(const RunConfig& c, std::ostream& log) {
  const HenonMap f = c.map();
  const Grid<GreenValue> g = green_grid(c, f);
  const double gmax = scale_max(c, g);
  const auto px = scaled_pixels(g, gmax);
  Csv csv({"i", "j", "re_t", "im_t", "g_plus", "pixel"});
  for (int j = 0; j < g.height; ++j)
    for (int i = 0; i < g.width; ++i) {
      const cd t = g.node(i, j);
      csv << i << j << t.real() << t.imag() << g.at(i, j).value
          << static_cast<int>(px[static_cast<std::size_t>(j) * g.width + i]);
      csv.end_row();
    }
  csv.footer("gmax", gmax);
  write_file(out_dir(c) / "julia.pgm", pgm(g.width, g.height, px));
  csv.save(out_dir(c) / "julia.csv");
  log << "render-julia: " << g.width << "x" << g.height << ", gmax " << gmax << "\n";
  return kExitOk;
}

int render_green_cmd(const RunConfig& c, std::ostream& log) {
  const HenonMap f = c.map();
  const Grid<GreenValue> g = green_grid(c, f);
  Csv csv({"i", "j", "re_t", "im_t", "g_plus", "error_bound", "iterations", "escaped_at"});
  for (int j = 0; j < g.height; ++j)
    for (int i = 0; i < g.width; ++i) {
      const cd t = g.node(i, j);
      const GreenValue& v = g.at(i, j);
      csv << i << j << t.real() << t.imag() << v.value << v.error_bound << v.iterations
          << (v.escaped_at ? *v.escaped_at : -1);
      csv.end_row();
    }
  csv.save(out_dir(c) / "green.csv");
  if (c.flag("ppm")) {
    // red: forward escaping, green: backward escaping, blue: log-scaled G+
    const ComplexLine line = c.line();
    const int budget = positive(c, "budget");
    const double gmax = scale_max(c, g);
    std::vector<std::uint8_t> rgb(g.data.size() * 3);
    parallel_for(static_cast<std::size_t>(g.height), [&](std::size_t row) {
      const int j = static_cast<int>(row);
      for (int i = 0; i < g.width; ++i) {
        const PointClass pc = classify(f, line.at(g.node(i, j)), budget);
        const std::size_t k = (row * g.width + i) * 3;
        rgb[k] = pc.forward.escaping() ? 255 : 0;
        rgb[k + 1] = pc.backward.escaping() ? 255 : 0;
        rgb[k + 2] = log_scale(g.at(i, j).value, gmax);
      }
    });
    write_file(out_dir(c) / "green.ppm", ppm(g.width, g.height, rgb));
  }
  log << "render-green: " << g.width << "x" << g.height << "\n";
  return kExitOk;
}

PotentialField potential(const RunConfig& c, const HenonMap& f) {
  const std::string p = c.text("potential");
  if (p == "green") return green_potential(f, positive_real(c, "tol"));
  if (p == "log_abs_z1") return log_abs_z1();
  if (p == "log_sup_norm") return log_sup_norm();
  throw ConfigError("potential", "expected green, log_abs_z1 or log_sup_norm, got '" + p + "'");
}

int slice_cmd(const RunConfig& c, std::ostream& log) {
  const HenonMap f = c.map();
  const SliceMeasure m = slice(potential(c, f), c.line(), c.window(), positive(c, "resolution"));
  slice_table(m).save(out_dir(c) / "slice.csv");
  log << "slice: total mass " << csv_number(m.total_mass) << "\n";
  return kExitOk;
}

int equidist_cmd(const RunConfig& c, std::ostream& log) {
  const HenonMap f = c.map();
  const int n0 = c.integer("n_min"), n1 = c.integer("n_max");
  if (n0 < 0) throw ConfigError("n_min", "must be >= 0");
  if (n1 < n0) throw ConfigError("n_max", "must be >= n_min");
  std::vector<int> ns;
  for (int n = n0; n <= n1; ++n) ns.push_back(n);
  EquidistOptions o;
  o.quadrature = positive(c, "quadrature");
  o.green_tol = positive_real(c, "tol");
  o.noise_floor = positive_real(c, "noise_floor");
  o.log_n_term = c.flag("log_n_term");
  const EquidistReport r = equidist_experiment(f, curve(c), test_forms(c, f), ns, o);
  equidist_table(r).save(out_dir(c) / "equidist.csv");
  log << "equidist: fitted rate " << csv_number(r.fitted_rate) << "\n";
  return kExitOk;
}

int periodic_cmd(const RunConfig& c, std::ostream& log) {
  const HenonMap f = c.map();
  const int n = positive(c, "period");
  const std::string method = c.text("method");
  std::optional<Csv> csv;
  if (method == "exact") {
    if (n > 2) throw ConfigError("period", "exact elimination supports periods 1 and 2");
    const auto pts = n == 1 ? fixed_points_exact(f) : period_two_exact(f);
    csv = periodic_table(pts);
    csv->footer("count", std::to_string(pts.size()));
  } else if (method == "newton") {
    SeedBox box;
    box.half_width = c.real("seed_half_width");
    box.seeds_per_axis = positive(c, "seeds_per_axis");
    if (box.half_width < 0.0) throw ConfigError("seed_half_width", "must be >= 0");
    const PeriodicSearch s = periodic_points(f, n, box);
    csv = periodic_table(s.points);
    csv->footer("count", std::to_string(s.points.size()));
    csv->footer("expected", std::to_string(s.expected));
    csv->footer("complete", s.complete ? "true" : "false");
    csv->footer("degenerate", s.degenerate ? "true" : "false");
  } else {
    throw ConfigError("method", "expected newton or exact, got '" + method + "'");
  }
  csv->save(out_dir(c) / "periodic.csv");
  log << "periodic: period " << n << "\n";
  return kExitOk;
}

Saddle chosen_saddle(const RunConfig& c, const HenonMap& f) {
  if (!c.text("saddle_z1").empty() || !c.text("saddle_z2").empty())
    return make_saddle(f, Point(c.complex("saddle_z1"), c.complex("saddle_z2")));
  std::vector<PeriodicPoint> saddles;
  for (const auto& p : fixed_points_exact(f))
    if (p.kind == PointKind::Saddle) saddles.push_back(p);
  const int k = c.integer("saddle_index");
  if (k < 0 || k >= static_cast<int>(saddles.size()))
    throw ConfigError("saddle_index", "map has " + std::to_string(saddles.size()) + " saddle fixed points");
  return make_saddle(f, saddles[k].point);
}

int nevanlinna_cmd(const RunConfig& c, std::ostream& log) {
  const HenonMap f = c.map();
  RigidityOptions o;
  const std::string form = c.text("area_form");
  if (form == "fubini-study")
    o.nevanlinna.form = AreaForm::FubiniStudy;
  else if (form == "euclidean")
    o.nevanlinna.form = AreaForm::Euclidean;
  else
    throw ConfigError("area_form", "expected fubini-study or euclidean, got '" + form + "'");
  o.nevanlinna.rel_tol = positive_real(c, "rel_tol");
  o.nevanlinna.sectors = positive(c, "sectors");
  o.nevanlinna.max_cells = positive(c, "max_cells");
  o.quadrature = positive(c, "quadrature");
  o.green_tol = positive_real(c, "tol");
  std::vector<double> radii = c.reals("r_list");
  for (double r : radii)
    if (!(r > 0.0)) throw ConfigError("r_list", "radii must be > 0");
  std::sort(radii.begin(), radii.end());
  const Saddle s = chosen_saddle(c, f);
  const auto rows = rigidity_experiment(f, s, radii, test_forms(c, f), o);
  rigidity_table(rows).save(out_dir(c) / "nevanlinna.csv");
  log << "nevanlinna: " << rows.size() << " rows\n";
  return kExitOk;
}

Family family(const RunConfig& c) {
  const std::string name = c.text("family");
  if (name == "quadratic") return Family::quadratic();
  if (name == "quadratic-fixed-a") return Family::quadratic_fixed_a(c.complex("family_a"));
  throw ConfigError("family", "expected quadratic or quadratic-fixed-a, got '" + name + "'");
}

int param_scan_cmd(const RunConfig& c, std::ostream& log) {
  const Family fam = family(c);
  const Point dir(c.complex("param_dir1"), c.complex("param_dir2"));
  if (dir.squaredNorm() == 0.0) throw ConfigError("param_dir1", "parameter direction is zero");
  const ComplexLine params(Point(c.complex("param_base1"), c.complex("param_base2")), dir);
  const Point z0(c.complex("point1"), c.complex("point2"));
  const ParamScan s = param_scan(fam, z0, params, c.window(), positive(c, "width"), positive(c, "height"),
                                 positive_real(c, "tol"), positive(c, "budget"));
  const double gmax = scale_max(c, s.green);
  const auto px = scaled_pixels(s.green, gmax);
  Csv csv({"i", "j", "re_t", "im_t", "g_plus", "error_bound", "forward_escaping", "forward_n"});
  for (int j = 0; j < s.green.height; ++j)
    for (int i = 0; i < s.green.width; ++i) {
      const cd t = s.green.node(i, j);
      const GreenValue& v = s.green.at(i, j);
      const OrbitTag& tag = s.forward.at(i, j);
      csv << i << j << t.real() << t.imag() << v.value << v.error_bound << (tag.escaping() ? 1 : 0) << tag.n;
      csv.end_row();
    }
  csv.footer("gmax", gmax);
  write_file(out_dir(c) / "scan.pgm", pgm(s.green.width, s.green.height, px));
  csv.save(out_dir(c) / "scan.csv");
  log << "param-scan: " << fam.label() << " " << s.green.width << "x" << s.green.height << "\n";
  return kExitOk;
}

int selftest_cmd(const RunConfig& c, std::ostream& log) {
  bool all = true;
  for (const auto& r : selftest(c, log)) all = all && r.pass;
  return all ? kExitOk : kExitNumerical;
}

}  // namespace

int run_command(const std::string& command, const RunConfig& c, std::ostream& log) {
  const int threads = c.integer("threads");
  if (threads < 0) throw ConfigError("threads", "must be >= 0");
  set_thread_count(threads);
  if (command == "render-julia") return render_julia(c, log);
  if (command == "render-green") return render_green_cmd(c, log);
  if (command == "slice") return slice_cmd(c, log);
  if (command == "equidist") return equidist_cmd(c, log);
  if (command == "periodic") return periodic_cmd(c, log);
  if (command == "nevanlinna") return nevanlinna_cmd(c, log);
  if (command == "param-scan") return param_scan_cmd(c, log);
  if (command == "selftest") return selftest_cmd(c, log);
  throw ConfigError("command", "unknown command '" + command + "'");
}

int run(const std::string& command, const RunConfig& c, std::ostream& log, std::ostream& err) {
  try {
    return run_command(command, c, log);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "error: " << command << ": invalid argument: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "error: " << command << ": numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << command << ": " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace henon::cli
