#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace frftsim {
namespace {

std::string trim(const std::string& text) {
  const std::size_t first = text.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const std::size_t last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

void KeyValueStore::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : items_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  items_.emplace_back(key, value);
}

bool KeyValueStore::has(const std::string& key) const {
  for (const auto& [k, v] : items_) {
    if (k == key) return true;
  }
  return false;
}

const std::string& KeyValueStore::get(const std::string& key) const {
  for (const auto& [k, v] : items_) {
    if (k == key) return v;
  }
  throw ConfigError("missing required key: " + key);
}

std::string KeyValueStore::get_or(const std::string& key,
                                  const std::string& fallback) const {
  return has(key) ? get(key) : fallback;
}

void KeyValueStore::require_known(
    const std::vector<std::string>& allowed) const {
  for (const auto& [k, v] : items_) {
    bool known = false;
    for (const auto& a : allowed) {
      if (k == a) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError("unknown key: " + k);
    }
  }
}

KeyValueStore read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path);
  }
  KeyValueStore store;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string body = trim(line);
    if (body.empty()) continue;
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": empty key or value");
    }
    store.set(key, value);
  }
  return store;
}

double parse_number(const std::string& text, const std::string& key) {
  const std::string body = trim(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(body, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": bad number '" + text + "'");
  }
  if (used != body.size() || !std::isfinite(value)) {
    throw ConfigError(key + ": bad number '" + text + "'");
  }
  return value;
}

long long parse_integer(const std::string& text, const std::string& key) {
  const std::string body = trim(text);
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(body, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": bad integer '" + text + "'");
  }
  if (used != body.size()) {
    throw ConfigError(key + ": bad integer '" + text + "'");
  }
  return value;
}

double parse_angle(const std::string& text, const std::string& key) {
  const std::string body = trim(text);
  const std::size_t pos = body.find("pi");
  if (pos == std::string::npos) {
    return parse_number(body, key);
  }
  const std::string num = trim(body.substr(0, pos));
  const std::string rest = trim(body.substr(pos + 2));
  double numerator = 1.0;
  if (num == "-") {
    numerator = -1.0;
  } else if (!num.empty() && num != "+") {
    numerator = parse_number(num, key);
  }
  double denominator = 1.0;
  if (!rest.empty()) {
    if (rest[0] != '/') {
      throw ConfigError(key + ": bad angle '" + text + "'");
    }
    denominator = parse_number(rest.substr(1), key);
    if (denominator == 0.0) {
      throw ConfigError(key + ": zero denominator in '" + text + "'");
    }
  }
  return numerator * kPi / denominator;
}

std::vector<double> parse_number_list(const std::string& text,
                                      const std::string& key) {
  std::vector<double> values;
  std::size_t start = 0;
  const std::string body = trim(text);
  if (body.empty()) return values;
  while (true) {
    const std::size_t comma = body.find(',', start);
    const std::string item = body.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    values.push_back(parse_number(item, key));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

std::string format17(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace frftsim
