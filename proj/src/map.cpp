#include "henon/map.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace henon {

HenonFactor::HenonFactor(Poly p, cd a) : p_(std::move(p)), dp_(p_.derivative()), a_(a) {
  if (p_.degree() < 2) throw std::invalid_argument("Hénon factor needs deg p >= 2");
  if (a_ == cd(0.0)) throw std::invalid_argument("Hénon factor needs a != 0");
  inv_a_ = 1.0 / a_;
}

Matrix2 HenonFactor::jacobian(cd z1) const {
  Matrix2 m;
  m << dp_(z1), a_, 1.0, 0.0;
  return m;
}

Matrix2 HenonFactor::inverse_jacobian(cd z2) const {
  Matrix2 m;
  m << 0.0, 1.0, inv_a_, -dp_(z2) * inv_a_;
  return m;
}

namespace {

double factor_forward_radius(const HenonFactor& h) {
  const double lead = std::abs(h.p().leading());
  return std::max(1.0, (std::abs(h.a()) + 2.0 + h.p().lower_coefficient_sum()) / lead);
}

}  // namespace

HenonMap::HenonMap(std::vector<HenonFactor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("Hénon type map needs at least one factor");
  for (const auto& h : factors_) {
    degree_ *= h.degree();
    jacobian_det_ *= -h.a();
  }
  cert_ = escape_certificate(*this);
  double rb = 0.0;
  for (const auto& h : factors_) {
    const double lead = std::abs(h.p().leading());
    rb = std::max(rb, std::max(1.0, (1.0 + 2.0 * std::abs(h.a()) + h.p().lower_coefficient_sum()) / lead));
  }
  backward_radius_ = rb;
}

HenonMap HenonMap::quadratic(cd c, cd a) { return single(Poly({c, 0.0, 1.0}), a); }

HenonMap HenonMap::inverse_conjugate() const {
  // s h^{-1} s (z1, z2) = ((z2 - p(z1)) / a, z1): a factor with -p/a and 1/a.
  std::vector<HenonFactor> g;
  g.reserve(factors_.size());
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
    const cd inv = 1.0 / it->a();
    g.emplace_back(-inv * it->p(), inv);
  }
  return HenonMap(std::move(g));
}

HenonMap HenonMap::iterate(int n) const {
  if (n < 1) throw std::invalid_argument("iterate: n must be >= 1");
  std::vector<HenonFactor> all;
  for (int k = 0; k < n; ++k) all.insert(all.end(), factors_.begin(), factors_.end());
  return HenonMap(std::move(all));
}

HenonMap compose(const HenonMap& f, const HenonMap& g) {
  std::vector<HenonFactor> all = f.factors();
  all.insert(all.end(), g.factors().begin(), g.factors().end());
  return HenonMap(std::move(all));
}

Point apply(const HenonMap& f, const Point& z) {
  cd z1 = z(0), z2 = z(1);
  f.forward(z1, z2);
  return Point(z1, z2);
}

ExtPoint apply(const HenonMap& f, const ExtPoint& z) {
  ExtPoint w = z;
  f.forward(w.z1, w.z2);
  return w;
}

Point apply_inverse(const HenonMap& f, const Point& z) {
  cd z1 = z(0), z2 = z(1);
  f.backward(z1, z2);
  return Point(z1, z2);
}

ExtPoint apply_inverse(const HenonMap& f, const ExtPoint& z) {
  ExtPoint w = z;
  f.backward(w.z1, w.z2);
  return w;
}

Matrix2 jacobian(const HenonMap& f, const Point& z) {
  Matrix2 j = Matrix2::Identity();
  cd z1 = z(0), z2 = z(1);
  for (auto it = f.factors().rbegin(); it != f.factors().rend(); ++it) {
    j = it->jacobian(z1) * j;
    it->forward(z1, z2);
  }
  return j;
}

Matrix2 inverse_jacobian(const HenonMap& f, const Point& z) {
  Matrix2 j = Matrix2::Identity();
  cd z1 = z(0), z2 = z(1);
  for (const auto& h : f.factors()) {
    j = h.inverse_jacobian(z2) * j;
    h.backward(z1, z2);
  }
  return j;
}

EscapeCert escape_certificate(const HenonMap& f) {
  EscapeCert cert;
  for (const auto& h : f.factors()) cert.radius = std::max(cert.radius, factor_forward_radius(h));
  cert.growth = 2.0;
  return cert;
}

// --- text format ------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<double> parse_reals(std::string_view text, std::string_view what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view tok = trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || res.ec != std::errc() || res.ptr != tok.data() + tok.size())
      throw std::invalid_argument("cannot parse number '" + std::string(tok) + "' in " + std::string(what));
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

HenonFactor parse_factor(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::string word;
  in >> word;
  if (word != "factor") throw std::invalid_argument("expected 'factor', got '" + word + "'");
  bool have_a = false, have_p = false;
  cd a;
  std::vector<cd> coeffs;
  while (in >> word) {
    const auto eq = word.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("malformed factor field '" + word + "'");
    const std::string key = word.substr(0, eq);
    const std::string value = word.substr(eq + 1);
    if (key == "a") {
      a = parse_complex(value);
      have_a = true;
    } else if (key == "p") {
      const auto reals = parse_reals(value, "p");
      if (reals.size() % 2 != 0) throw std::invalid_argument("p needs re,im pairs");
      for (std::size_t i = 0; i < reals.size(); i += 2) coeffs.emplace_back(reals[i], reals[i + 1]);
      have_p = true;
    } else {
      throw std::invalid_argument("unknown factor field '" + key + "'");
    }
  }
  if (!have_a) throw std::invalid_argument("factor is missing a=");
  if (!have_p) throw std::invalid_argument("factor is missing p=");
  return HenonFactor(Poly(std::move(coeffs)), a);
}

}  // namespace

cd parse_complex(std::string_view text) {
  const auto reals = parse_reals(trim(text), "complex value");
  if (reals.size() == 1) return cd(reals[0], 0.0);
  if (reals.size() == 2) return cd(reals[0], reals[1]);
  throw std::invalid_argument("complex value needs 're,im', got '" + std::string(text) + "'");
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

HenonMap parse_map(std::string_view text) {
  std::vector<HenonFactor> factors;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find_first_of("\n;", pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) factors.push_back(parse_factor(line));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  if (factors.empty()) throw std::invalid_argument("map description contains no factor");
  return HenonMap(std::move(factors));
}

std::string format_map(const HenonMap& f) {
  std::string out;
  for (const auto& h : f.factors()) {
    out += "factor a=" + format_double(h.a().real()) + "," + format_double(h.a().imag()) + " p=";
    const auto& c = h.p().coefficients();
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (j) out += ",";
      out += format_double(c[j].real()) + "," + format_double(c[j].imag());
    }
    out += "\n";
  }
  return out;
}

}  // namespace henon
