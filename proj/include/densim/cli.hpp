#pragma once

// Batch front end. Subcommands:
//   run <file> [--out PATH] [--format csv|json] [--seed N] [--samples N]
//   validate <file>
//   list-scenarios
// Exit codes: 0 success, 1 validation error, 2 runtime error. When --out is
// a relative path and DENSIM_OUT_DIR is set, output lands in that directory.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "densim/scenario_io.hpp"

namespace densim {

inline std::filesystem::path resolve_output_path(const std::string& out) {
  std::filesystem::path path(out);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("DENSIM_OUT_DIR"); dir && *dir)
      path = std::filesystem::path(dir) / path;
  }
  return path;
}

inline int run_cli(std::vector<std::string> args) {
  CLI::App app{"density-matrix scenario runner"};
  app.require_subcommand(1);

  std::string run_file;
  std::string out_path;
  std::string format = "csv";
  std::uint64_t seed = 0;
  long samples = 0;
  CLI::App* run = app.add_subcommand("run", "run a scenario file");
  run->add_option("file", run_file, "scenario file")->required();
  run->add_option("--out", out_path, "output file (default: stdout)");
  run->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  CLI::Option* seed_opt = run->add_option("--seed", seed, "override the file's seed");
  CLI::Option* samples_opt =
      run->add_option("--samples", samples, "override the file's sample count")
          ->check(CLI::NonNegativeNumber);

  std::string validate_file;
  CLI::App* validate_cmd = app.add_subcommand("validate", "check a scenario file");
  validate_cmd->add_option("file", validate_file, "scenario file")->required();

  CLI::App* list_cmd = app.add_subcommand("list-scenarios", "print scenario names");

  std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (list_cmd->parsed()) {
    for (const std::string& name : scenario_names()) std::cout << name << "\n";
    return 0;
  }

  if (validate_cmd->parsed()) {
    try {
      (void)parse_scenario_file(validate_file);
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
    std::cout << "OK\n";
    return 0;
  }

  ScenarioConfig config;
  try {
    config = parse_scenario_file(run_file);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (seed_opt->count() > 0) config.seed = RngSeed{seed};
  if (samples_opt->count() > 0) config.samples = samples;

  std::string payload;
  try {
    const ScenarioResult result = run_scenario(config);
    payload = format == "json" ? to_json_string(result) : to_csv(result);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (out_path.empty()) {
    std::cout << payload;
    return 0;
  }
  const std::filesystem::path target = resolve_output_path(out_path);
  std::ofstream out(target, std::ios::binary);
  if (!out || !(out << payload)) {
    std::cerr << "error: cannot write output file '" << target.string() << "'\n";
    return 2;
  }
  return 0;
}

}  // namespace densim
