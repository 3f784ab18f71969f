#include "jtberry/envelope.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

namespace jtberry {

namespace {

std::string iso_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
  return buf;
}

}  // namespace

void check_finite(const Json& j) {
  if (j.is_number_float() && !std::isfinite(j.get<double>()))
    throw SolverError("non-finite value in output payload");
  if (j.is_array() || j.is_object())
    for (const auto& item : j) check_finite(item);
}

Json make_envelope(const RunConfig& cfg, const std::string& command,
                   Json payload, bool with_timestamp) {
  check_finite(payload);
  Json env;
  env["tool_version"] = kToolVersion;
  env["schema_version"] = kSchemaVersion;
  env["command"] = command;
  if (with_timestamp) env["timestamp"] = iso_timestamp();
  env["config"] = Json::object();
  for (const auto& [k, v] : cfg.entries()) env["config"][k] = v;
  env["status"] = "ok";
  env["payload"] = std::move(payload);
  return env;
}

Json make_error_envelope(const std::string& command, const std::string& code,
                         const std::string& message, bool with_timestamp) {
  Json env;
  env["tool_version"] = kToolVersion;
  env["schema_version"] = kSchemaVersion;
  env["command"] = command;
  if (with_timestamp) env["timestamp"] = iso_timestamp();
  env["status"] = "error";
  env["error"] = {{"code", code}, {"message", message}};
  return env;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write output file '" + path + "'");
  out << text;
}

}  // namespace jtberry
