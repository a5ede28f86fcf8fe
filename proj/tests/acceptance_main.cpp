// Acceptance suite: runs every built-in preset (one per criterion) and
// prints one pass/fail line per criterion. Exit code 0 only when all
// criteria hold at their stated tolerances.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include "phiid/presets.hpp"
#include "phiid/runner.hpp"

namespace {

// Criterion 7 additionally requires the distance at the last schedule
// point to be strictly below the first one.
bool strictly_decreasing_reports(const phiid::PresetResult& result) {
  for (const auto& run : result.runs) {
    for (const auto& report : run.report["reports"]) {
      const auto& d = report["distances"];
      if (d.empty()) continue;
      if (!(d.back().get<double>() < d.front().get<double>())) return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  const auto& presets = phiid::builtin_presets();
  int failures = 0;
  int index = 0;

  for (const auto& preset : presets) {
    ++index;
    phiid::RunOptions options;
    options.output_dir_override = "acceptance_out/" + preset.name;
    const auto start = clock::now();
    bool pass = false;
    std::string detail;
    try {
      const auto result = phiid::run_preset(preset, options);
      pass = result.exit_code == 0;
      if (pass && preset.name == "definetti-convergence") {
        pass = strictly_decreasing_reports(result);
        if (!pass) detail = " (distance did not strictly decrease)";
      }
      if (!pass && detail.empty()) {
        for (const auto& run : result.runs) {
          if (run.exit_code == 0) continue;
          for (const auto& v : run.report.value("verdicts", phiid::Json::array())) {
            if (!v["pass"].get<bool>()) {
              detail += " [" + v["name"].get<std::string>() + "]";
            }
          }
        }
      }
    } catch (const std::exception& e) {
      detail = std::string(" (error: ") + e.what() + ")";
    }
    const auto secs =
        std::chrono::duration<double>(clock::now() - start).count();
    std::printf("[%s] %02d %-36s %6.2fs%s\n", pass ? "PASS" : "FAIL", index,
                preset.name.c_str(), secs, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }

  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(presets.size()) - failures, presets.size());
  return failures == 0 ? 0 : 1;
}
