#include "jtberry/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace jtberry {

namespace {

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

RunConfig RunConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str());
}

RunConfig RunConfig::parse_string(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (cfg.values_.count(key))
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" +
                        key + "'");
    cfg.values_[key] = val;
    cfg.lines_[key] = lineno;
    cfg.consumed_[key] = false;
  }
  return cfg;
}

bool RunConfig::has(const std::string& key) const {
  return values_.count(key) != 0;
}

std::string RunConfig::raw(const std::string& key) {
  auto it = values_.find(key);
  if (it == values_.end())
    throw ConfigError("missing required key '" + key + "'");
  consumed_[key] = true;
  return it->second;
}

std::string RunConfig::get_string(const std::string& key) { return raw(key); }

std::string RunConfig::get_string(const std::string& key,
                                  const std::string& fallback) {
  return has(key) ? raw(key) : fallback;
}

double RunConfig::get_double(const std::string& key) {
  std::string v = raw(key);
  char* end = nullptr;
  double d = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    throw ConfigError("line " + std::to_string(lines_[key]) + ": key '" + key +
                      "' is not a number");
  return d;
}

double RunConfig::get_double(const std::string& key, double fallback) {
  return has(key) ? get_double(key) : fallback;
}

long RunConfig::get_int(const std::string& key) {
  std::string v = raw(key);
  char* end = nullptr;
  long d = std::strtol(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    throw ConfigError("line " + std::to_string(lines_[key]) + ": key '" + key +
                      "' is not an integer");
  return d;
}

long RunConfig::get_int(const std::string& key, long fallback) {
  return has(key) ? get_int(key) : fallback;
}

std::vector<double> RunConfig::get_doubles(const std::string& key) {
  std::string v = raw(key);
  std::vector<double> out;
  std::istringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    char* end = nullptr;
    double d = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0')
      throw ConfigError("line " + std::to_string(lines_[key]) + ": key '" +
                        key + "' has a non-numeric entry '" + item + "'");
    out.push_back(d);
  }
  if (out.empty())
    throw ConfigError("line " + std::to_string(lines_[key]) + ": key '" + key +
                      "' is empty");
  return out;
}

std::vector<double> RunConfig::get_doubles(const std::string& key,
                                           const std::vector<double>& fallback) {
  return has(key) ? get_doubles(key) : fallback;
}

void RunConfig::reject_unknown() const {
  for (const auto& [key, used] : consumed_) {
    if (!used)
      throw ConfigError("line " + std::to_string(lines_.at(key)) +
                        ": unknown key '" + key + "'");
  }
}

}  // namespace jtberry
