#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "lil/scenario.hpp"

namespace lil {

struct RunOptions {
  /// symbol | norming | classify | simulate | verify | report
  std::string command = "report";
  bool canonical_output = false;
};

/// Write to a temporary sibling, then rename over the target.
void write_file_atomic(const std::filesystem::path& target, const std::string& content);

/// Executes the analyses selected by the command in stage order
/// (symbol, norming, classify, simulate, verify) and writes report.json plus
/// one CSV per analysis into the output directory. Returns the report.
Json run_scenario(const Scenario& scenario, const RunOptions& options, std::ostream& log);

/// Stages executed by a subcommand; throws Error(schema) for unknown commands.
std::vector<std::string> stages_for(const std::string& command);

}  // namespace lil
