#pragma once

#include "henon/geometry.hpp"
#include "henon/map.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace henon::cli {

/// Bad or unknown configuration; the message names the key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& key, const std::string& what)
      : std::runtime_error("config key '" + key + "': " + what), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct KeySpec {
  std::string_view key;
  std::string_view default_value;
  std::string_view help;
};

/// Every accepted key with its default.
const std::vector<KeySpec>& config_keys();

/// Flat `key = value` configuration. Values are kept as text and converted on
/// access; unknown keys are rejected when set.
class RunConfig {
 public:
  RunConfig();

  /// Throws ConfigError for unknown keys.
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string text(const std::string& key) const;
  double real(const std::string& key) const;
  int integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  cd complex(const std::string& key) const;
  /// Comma-separated reals.
  std::vector<double> reals(const std::string& key) const;

  /// `map`, or the contents of `map_file` when that is set.
  HenonMap map() const;
  /// `center` +- `half_width` in both directions.
  Rect window() const;
  /// base (line_base1, line_base2) + t (line_dir1, line_dir2).
  ComplexLine line() const;

 private:
  std::map<std::string, std::string> values_;
};

/// Comma-separated reals; errors name `key`.
std::vector<double> parse_real_list(const std::string& key, const std::string& text);

/// Applies `key = value` lines; `#` starts a comment. Throws ConfigError
/// naming the key (or the line number for lines without `=`).
void apply_config_text(RunConfig& c, std::string_view text);
void apply_config_file(RunConfig& c, const std::string& path);

}  // namespace henon::cli
