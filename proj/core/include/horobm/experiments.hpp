#pragma once

#include <string>
#include <vector>

#include "horobm/config.hpp"
#include "horobm/report.hpp"

namespace horobm {

/// File emitted next to the report: SVG figures (only when figures are
/// requested) and per-instance chain reports.
struct ExperimentArtifact {
  std::string filename;
  std::string content;
};

struct ExperimentOutput {
  Report report;
  std::vector<ExperimentArtifact> artifacts;
};

ExperimentOutput cmd_verify_bm(const ExperimentConfig& cfg);
ExperimentOutput cmd_verify_bbl(const ExperimentConfig& cfg);
ExperimentOutput cmd_scaling(const ExperimentConfig& cfg);
ExperimentOutput cmd_bottleneck(const ExperimentConfig& cfg);
ExperimentOutput cmd_needles(const ExperimentConfig& cfg);

/// Dispatch by cfg.experiment; throws on unknown names.
ExperimentOutput run_experiment(const ExperimentConfig& cfg);

}  // namespace horobm
