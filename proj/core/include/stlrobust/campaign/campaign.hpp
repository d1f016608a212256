#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "stlrobust/campaign/config.hpp"
#include "stlrobust/campaign/summary.hpp"
#include "stlrobust/gridscan/gridscan.hpp"
#include "stlrobust/stl/signal.hpp"

namespace stlrobust::campaign {

struct RunSettings {
  /// Replaces the configured output directory.
  std::optional<std::filesystem::path> output_dir;
  /// Added to every configured seed.
  std::int64_t seed_offset = 0;
  std::size_t jobs = 1;
};

struct FalsifyOutcome {
  std::vector<falsifier::FalsificationReport> reports;
  std::vector<SummaryRow> summary;
  std::filesystem::path output_dir;
};

/// One run per (optimizer, seed), optimizers outermost. Writes
/// report_<opt>_<seed>.json and log_<opt>_<seed>.csv per run, then
/// summary.csv and summary.txt.
FalsifyOutcome run_falsify(const CampaignConfig& config, const RunSettings& settings = {});

/// Writes grid.csv and grid.json. Throws ConfigError unless the domain is 2-dim.
gridscan::GridScanResult run_gridscan(const CampaignConfig& config,
                                      const RunSettings& settings = {});

struct EvalOutcome {
  double rho = 0.0;
  stl::Signal trajectory;
  std::vector<double> scenario;
};

/// Simulates the configured eval point once. Writes the trajectory CSV when
/// requested. Throws ConfigError if the config has no eval section.
EvalOutcome run_eval(const CampaignConfig& config, const RunSettings& settings = {});

/// Trajectory as CSV with a leading time column.
std::string trajectory_csv(const stl::Signal& signal);

}  // namespace stlrobust::campaign
