#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jtberry/errors.hpp"

namespace jtberry {

/// Flat key-value run configuration.  UTF-8 text, one "key = value" per
/// line, '#' starts a comment.  Every key must be consumed by the invoked
/// command; leftovers are hard errors.
class RunConfig {
public:
  static RunConfig parse_file(const std::string& path);
  static RunConfig parse_string(const std::string& text);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key);
  std::string get_string(const std::string& key, const std::string& fallback);
  double get_double(const std::string& key);
  double get_double(const std::string& key, double fallback);
  long get_int(const std::string& key);
  long get_int(const std::string& key, long fallback);
  std::vector<double> get_doubles(const std::string& key);  // comma-separated
  std::vector<double> get_doubles(const std::string& key,
                                  const std::vector<double>& fallback);

  /// Throws ConfigError naming the first unconsumed key and its line.
  void reject_unknown() const;

  const std::map<std::string, std::string>& entries() const {
    return values_;
  }

private:
  std::string raw(const std::string& key);
  std::map<std::string, std::string> values_;
  std::map<std::string, int> lines_;
  std::map<std::string, bool> consumed_;
};

}  // namespace jtberry
