#include "config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace henon::cli {

const std::vector<KeySpec>& config_keys() {
  static const std::vector<KeySpec> keys = {
      {"map", "factor a=0.4,0 p=-1.1,0,0,0,1,0", "map description; factors separated by ';'"},
      {"map_file", "", "file with the map description (overrides map)"},
      {"out", "out", "output directory"},
      {"threads", "0", "worker threads, 0 = auto"},
      {"tol", "1e-10", "Green function tolerance"},
      {"budget", "2048", "iteration budget"},
      {"width", "512", "grid width"},
      {"height", "512", "grid height"},
      {"center", "0,0", "window center in the t-plane"},
      {"half_width", "3", "window half width"},
      {"line_base1", "0,0", "line base point, z1"},
      {"line_base2", "0,0", "line base point, z2"},
      {"line_dir1", "1,0", "line direction, z1"},
      {"line_dir2", "0,0", "line direction, z2"},
      {"gmax", "0", "G value mapped to white, 0 = grid maximum"},
      {"ppm", "false", "render-green: also write a P6 composite"},
      {"resolution", "512", "slice cells per axis"},
      {"potential", "green", "slice potential: green, log_abs_z1, log_sup_norm"},
      {"n_min", "1", "first pullback depth"},
      {"n_max", "10", "last pullback depth"},
      {"curve", "1,0,1,0", "curve terms i,j,re,im separated by ';'"},
      {"forms", "default", "test forms c1re,c1im,c2re,c2im,rho separated by ';', or default"},
      {"rho", "0.8", "radius of the default test forms"},
      {"quadrature", "32", "pair_form nodes per axis"},
      {"noise_floor", "1e-6", "equidist noise floor"},
      {"log_n_term", "false", "equidist: fit log(e_n / n)"},
      {"period", "1", "period"},
      {"method", "newton", "periodic: newton or exact (periods 1 and 2)"},
      {"seeds_per_axis", "8", "Newton seeds per real axis"},
      {"seed_half_width", "0", "seed box half width, 0 = certificate radius"},
      {"saddle_index", "0", "nevanlinna: index among the saddle fixed points"},
      {"saddle_z1", "", "nevanlinna: explicit saddle, z1"},
      {"saddle_z2", "", "nevanlinna: explicit saddle, z2"},
      {"r_list", "1,10,100,1000", "nevanlinna radii"},
      {"area_form", "fubini-study", "fubini-study or euclidean"},
      {"rel_tol", "1e-6", "nevanlinna cubature tolerance"},
      {"sectors", "64", "nevanlinna initial sectors"},
      {"max_cells", "400000", "nevanlinna cell budget"},
      {"family", "quadratic", "quadratic (p = z^2 + c1, a = c2) or quadratic-fixed-a"},
      {"family_a", "0.4,0", "a for quadratic-fixed-a"},
      {"param_base1", "0,0", "parameter line base, c1"},
      {"param_base2", "0.4,0", "parameter line base, c2"},
      {"param_dir1", "1,0", "parameter line direction, c1"},
      {"param_dir2", "0,0", "parameter line direction, c2"},
      {"point1", "0,0", "param-scan base point, z1"},
      {"point2", "0,0", "param-scan base point, z2"},
  };
  return keys;
}

RunConfig::RunConfig() {
  for (const auto& k : config_keys()) values_.emplace(std::string(k.key), std::string(k.default_value));
}

void RunConfig::set(const std::string& key, const std::string& value) {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError(key, "unknown key");
  it->second = value;
}

bool RunConfig::has(const std::string& key) const { return values_.count(key) != 0; }

std::string RunConfig::text(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError(key, "unknown key");
  return it->second;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_real(const std::string& key, const std::string& s) {
  const std::string t = trim(s);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || *end != '\0' || errno == ERANGE) throw ConfigError(key, "expected a number, got '" + s + "'");
  return v;
}

}  // namespace

double RunConfig::real(const std::string& key) const { return to_real(key, text(key)); }

int RunConfig::integer(const std::string& key) const {
  const std::string t = trim(text(key));
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (t.empty() || *end != '\0' || errno == ERANGE || v < -(1L << 30) || v > (1L << 30))
    throw ConfigError(key, "expected an integer, got '" + t + "'");
  return static_cast<int>(v);
}

bool RunConfig::flag(const std::string& key) const {
  const std::string t = trim(text(key));
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError(key, "expected true or false, got '" + t + "'");
}

cd RunConfig::complex(const std::string& key) const {
  try {
    return parse_complex(trim(text(key)));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, e.what());
  }
}

std::vector<double> RunConfig::reals(const std::string& key) const { return parse_real_list(key, text(key)); }

std::vector<double> parse_real_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_real(key, item));
  if (out.empty()) throw ConfigError(key, "expected a comma-separated list");
  return out;
}

HenonMap RunConfig::map() const {
  const std::string file = trim(text("map_file"));
  std::string desc = text("map");
  const char* key = "map";
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw ConfigError("map_file", "cannot read '" + file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    desc = ss.str();
    key = "map_file";
  }
  try {
    return parse_map(desc);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, e.what());
  }
}

Rect RunConfig::window() const {
  const double h = real("half_width");
  if (!(h > 0.0)) throw ConfigError("half_width", "must be > 0");
  return Rect::centered(complex("center"), h);
}

ComplexLine RunConfig::line() const {
  const Point dir(complex("line_dir1"), complex("line_dir2"));
  if (dir.squaredNorm() == 0.0) throw ConfigError("line_dir1", "line direction is zero");
  return {Point(complex("line_base1"), complex("line_base2")), dir};
}

void apply_config_text(RunConfig& c, std::string_view text) {
  std::stringstream ss{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(ss, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(number), "expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    c.set(key, trim(std::string_view(line).substr(eq + 1)));
  }
}

void apply_config_file(RunConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  apply_config_text(c, ss.str());
}

}  // namespace henon::cli
