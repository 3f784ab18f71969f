#pragma once

#include <map>
#include <string>

#include "jtberry/envelope.hpp"

namespace jtberry {

struct CliOptions {
  std::string out_dir = ".";
  std::string format = "json";  // json | csv | both
  int threads = 1;
  unsigned seed = 1;
  bool no_timestamp = false;
};

/// Envelope plus any CSV side outputs (file name -> contents).
struct CommandResult {
  Json envelope;
  std::map<std::string, std::string> csv_files;
};

CommandResult cmd_model_info(RunConfig& cfg, const CliOptions& opt);
CommandResult cmd_trough(RunConfig& cfg, const CliOptions& opt);
CommandResult cmd_berry(RunConfig& cfg, const CliOptions& opt);
CommandResult cmd_holonomy(RunConfig& cfg, const CliOptions& opt);
CommandResult cmd_vibronic(RunConfig& cfg, const CliOptions& opt);
CommandResult cmd_rotor(RunConfig& cfg, const CliOptions& opt);
CommandResult cmd_apes_scan(RunConfig& cfg, const CliOptions& opt);
CommandResult cmd_perturb_scan(RunConfig& cfg, const CliOptions& opt);

/// Dispatch by verb name; throws ConfigError for unknown verbs.
CommandResult run_command(const std::string& verb, RunConfig& cfg,
                          const CliOptions& opt);

/// Exit-code contract: 0 ok, 2 config, 3 capacity, 4 numerical.
int exit_code_for(const std::string& error_code);

}  // namespace jtberry
