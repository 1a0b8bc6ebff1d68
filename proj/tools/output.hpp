#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace henon::cli {

/// 17 significant digits in exponent form, so every field carries the full double.
std::string csv_number(double x);

/// CSV built in memory and written once. Footer rows start with `#`.
class Csv {
 public:
  explicit Csv(const std::vector<std::string>& header);

  Csv& operator<<(double x);
  Csv& operator<<(int x);
  Csv& operator<<(const std::string& s);
  void end_row();
  void footer(const std::string& key, double value);
  void footer(const std::string& key, const std::string& value);

  const std::string& str() const { return text_; }
  void save(const std::filesystem::path& path) const;

 private:
  void field(const std::string& s);

  std::string text_;
  bool row_open_ = false;
};

/// round(255 min(1, log(1 + g) / log(1 + gmax))); 0 when gmax <= 0.
std::uint8_t log_scale(double g, double gmax);

/// P5 with header `P5\n<w> <h>\n255\n`, row-major from the top-left pixel.
std::string pgm(int width, int height, const std::vector<std::uint8_t>& pixels);
/// P6, three bytes per pixel.
std::string ppm(int width, int height, const std::vector<std::uint8_t>& rgb);

void write_file(const std::filesystem::path& path, const std::string& bytes);

}  // namespace henon::cli
