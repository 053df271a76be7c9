#ifndef FRFTSIM_CONFIG_HPP
#define FRFTSIM_CONFIG_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace frftsim {

/// Bad key, bad value, missing file: anything the caller misconfigured.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Ordered key -> value store; setting an existing key overwrites in place.
class KeyValueStore {
 public:
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;
  /// Throws ConfigError naming the key when absent.
  const std::string& get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  const std::vector<std::pair<std::string, std::string>>& items() const {
    return items_;
  }
  /// Throws ConfigError naming the first key not in `allowed`.
  void require_known(const std::vector<std::string>& allowed) const;

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

/// Line-based "key = value" file; '#' starts a comment; later lines override.
KeyValueStore read_config_file(const std::string& path);

double parse_number(const std::string& text, const std::string& key);
long long parse_integer(const std::string& text, const std::string& key);

/// Angle literal: plain radians ("1.5708") or a pi fraction ("pi", "3pi/4",
/// "-pi/2", "1.5pi"). Exact multiples of pi avoid radian rounding in configs.
double parse_angle(const std::string& text, const std::string& key);

/// Comma-separated numbers; surrounding spaces ignored.
std::vector<double> parse_number_list(const std::string& text,
                                      const std::string& key);

/// Shortest round-trip decimal form, printf %.17g.
std::string format17(double value);

}  // namespace frftsim

#endif
