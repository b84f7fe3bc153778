#pragma once

#include <cstdint>
#include <string>

namespace horobm {

/// Experiment selection plus the raw JSON document; experiment-specific keys
/// are read by the command implementations. CLI-level overrides (seed, output
/// directory, figure emission) live here.
struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 811ull;
  std::string out_dir = ".";
  bool svg = false;
  std::string raw = "{}";
};

ExperimentConfig load_config(const std::string& json_text);

}  // namespace horobm
