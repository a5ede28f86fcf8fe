#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phiid/config.hpp"

namespace phiid {

struct RunOptions {
  std::optional<std::uint64_t> seed_override;
  std::optional<std::string> output_dir_override;
  unsigned threads = 0;  // 0 = available parallelism
  bool write_files = true;
};

struct RunResult {
  int exit_code = 0;  // 0 pass, 1 verdict failed, 2 config/usage error
  Json report;
  std::vector<std::string> written_files;
};

/// Executes one experiment config. Config errors surface as ConfigError
/// from here; run_config_file converts them to exit code 2.
RunResult run_config(const Json& config, const RunOptions& options = {});

RunResult run_config_file(const std::string& path,
                          const RunOptions& options = {});

/// Output directory resolution: override > config "output" > env
/// PHIID_OUTPUT_DIR > "out".
std::string resolve_output_dir(const Json& config, const RunOptions& options);

}  // namespace phiid
