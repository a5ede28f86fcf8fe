#pragma once

#include <string>
#include <vector>

#include "phiid/config.hpp"
#include "phiid/runner.hpp"

namespace phiid {

/// A named built-in experiment: one or more configs that must all pass.
struct Preset {
  std::string name;
  std::string claim;
  std::vector<Json> configs;
};

const std::vector<Preset>& builtin_presets();
const Preset* find_preset(std::string_view name);

/// Runs every config of the preset; exit code 0 only if all pass.
struct PresetResult {
  int exit_code = 0;
  std::vector<RunResult> runs;
};
PresetResult run_preset(const Preset& preset, const RunOptions& options = {});

}  // namespace phiid
