#pragma once

#include <string>
#include <vector>

namespace ptq::cli {

/// One subcommand invocation with its configuration text.
struct PresetRun {
  std::string command;  // spectrum | evolve | optimize | sweep
  std::string name;     // artifact stem
  std::string config;
};

std::vector<std::string> preset_names();

/// Throws std::invalid_argument for unknown names.
std::vector<PresetRun> preset_runs(const std::string& name);

}  // namespace ptq::cli
