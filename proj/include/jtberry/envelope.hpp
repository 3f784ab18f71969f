#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "jtberry/config.hpp"

namespace jtberry {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSchemaVersion = "1";

/// Wraps a command payload with version, config echo, and status.  Rejects
/// non-finite numeric payload fields (errors are reported via status
/// instead of NaN/Inf leaking into output files).
Json make_envelope(const RunConfig& cfg, const std::string& command,
                   Json payload, bool with_timestamp);

Json make_error_envelope(const std::string& command, const std::string& code,
                         const std::string& message, bool with_timestamp);

void check_finite(const Json& j);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace jtberry
