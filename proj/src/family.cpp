#include "henon/family.hpp"

#include "henon/parallel.hpp"

#include <stdexcept>

namespace henon {

Family::Family(std::function<HenonMap(const Point&)> builder, int degree, std::string label)
    : builder_(std::move(builder)), degree_(degree), label_(std::move(label)) {
  if (degree_ < 2) throw std::invalid_argument("Family: degree must be >= 2");
}

Family Family::quadratic() {
  return Family([](const Point& c) { return HenonMap::quadratic(c(0), c(1)); }, 2, "z^2 + c1, a = c2");
}

Family Family::quadratic_fixed_a(cd a) {
  return Family([a](const Point& c) { return HenonMap::quadratic(c(0), a); }, 2,
                "z^2 + c1, a = " + format_double(a.real()) + "," + format_double(a.imag()));
}

HenonMap Family::operator()(const Point& c) const {
  HenonMap f = builder_(c);
  if (f.degree() != degree_) throw std::invalid_argument("Family: member degree differs from the family degree");
  return f;
}

GreenValue family_green(const Family& fam, const Point& c, const Point& z, double tol, int budget) {
  return green_plus(fam(c), z, tol, budget);
}

ParamScan param_scan(const Family& fam, const Point& z0, const ComplexLine& params, const Rect& window, int width,
                     int height, double tol, int budget) {
  ParamScan scan{Grid<GreenValue>(window, width, height), Grid<OrbitTag>(window, width, height)};
  parallel_for(static_cast<std::size_t>(width) * height, [&](std::size_t k) {
    const int i = static_cast<int>(k % width), j = static_cast<int>(k / width);
    const HenonMap f = fam(params.at(scan.green.node(i, j)));
    scan.green.at(i, j) = green_plus(f, z0, tol, budget);
    scan.forward.at(i, j) = classify_forward(f, z0, budget);
  });
  return scan;
}

}  // namespace henon
