#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace henon::cli {

std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

Csv::Csv(const std::vector<std::string>& header) {
  for (const auto& h : header) field(h);
  end_row();
}

void Csv::field(const std::string& s) {
  if (row_open_) text_ += ',';
  text_ += s;
  row_open_ = true;
}

Csv& Csv::operator<<(double x) {
  field(csv_number(x));
  return *this;
}

Csv& Csv::operator<<(int x) {
  field(std::to_string(x));
  return *this;
}

Csv& Csv::operator<<(const std::string& s) {
  field(s);
  return *this;
}

void Csv::end_row() {
  text_ += '\n';
  row_open_ = false;
}

void Csv::footer(const std::string& key, double value) { footer(key, csv_number(value)); }

void Csv::footer(const std::string& key, const std::string& value) { text_ += "# " + key + "," + value + "\n"; }

void Csv::save(const std::filesystem::path& path) const { write_file(path, text_); }

std::uint8_t log_scale(double g, double gmax) {
  if (!(gmax > 0.0) || !(g > 0.0)) return 0;
  const double v = std::min(1.0, std::log1p(g) / std::log1p(gmax));
  return static_cast<std::uint8_t>(std::lround(255.0 * v));
}

namespace {

std::string netpbm(const char* magic, int width, int height, const std::vector<std::uint8_t>& bytes,
                   std::size_t channels) {
  if (bytes.size() != static_cast<std::size_t>(width) * height * channels)
    throw std::invalid_argument("image payload does not match its size");
  std::string out = std::string(magic) + "\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  out.append(bytes.begin(), bytes.end());
  return out;
}

}  // namespace

std::string pgm(int width, int height, const std::vector<std::uint8_t>& pixels) {
  return netpbm("P5", width, height, pixels, 1);
}

std::string ppm(int width, int height, const std::vector<std::uint8_t>& rgb) {
  return netpbm("P6", width, height, rgb, 3);
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace henon::cli
