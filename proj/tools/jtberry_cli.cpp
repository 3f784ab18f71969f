#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "jtberry/commands.hpp"

namespace fs = std::filesystem;
using namespace jtberry;

int main(int argc, char** argv) {
  CLI::App app{"Jahn-Teller trough, Berry-phase, and vibronic spectrum tool"};
  app.require_subcommand(1);

  std::string config_path;
  CliOptions opt;
  app.add_option("--config", config_path, "Run configuration file");
  app.add_option("--out", opt.out_dir, "Output directory");
  app.add_option("--format", opt.format, "Output format: json|csv|both")
      ->check(CLI::IsMember({"json", "csv", "both"}));
  app.add_option("--threads", opt.threads, "Scan parallelism");
  app.add_option("--seed", opt.seed, "Seed for sampled checks");
  app.add_flag("--no-timestamp", opt.no_timestamp,
               "Omit the timestamp from envelopes (test mode)");

  const char* verbs[] = {"model-info", "trough",    "berry",
                         "holonomy",   "vibronic",  "rotor",
                         "apes-scan",  "perturb-scan"};
  // Global flags may follow the verb; let them fall through to the parent.
  for (const char* v : verbs) app.add_subcommand(v)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  std::string verb = app.get_subcommands().front()->get_name();

  auto emit_error = [&](const std::string& code, const std::string& msg) {
    Json env = make_error_envelope(verb, code, msg, !opt.no_timestamp);
    std::cout << env.dump(2) << "\n";
    std::cerr << "error [" << code << "]: " << msg << "\n";
    return exit_code_for(code);
  };

  try {
    RunConfig cfg = config_path.empty() ? RunConfig::parse_string("")
                                        : RunConfig::parse_file(config_path);
    CommandResult res = run_command(verb, cfg, opt);
    fs::create_directories(opt.out_dir);
    std::string stem = verb;
    if (opt.format == "json" || opt.format == "both")
      write_text_file((fs::path(opt.out_dir) / (stem + ".json")).string(),
                      res.envelope.dump(2) + "\n");
    if (opt.format == "csv" || opt.format == "both")
      for (const auto& [name, text] : res.csv_files)
        write_text_file((fs::path(opt.out_dir) / name).string(), text);
    std::cout << res.envelope.dump(2) << "\n";
    return 0;
  } catch (const Error& e) {
    return emit_error(e.code(), e.what());
  } catch (const std::exception& e) {
    return emit_error("internal", e.what());
  }
}
