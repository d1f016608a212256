#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stlrobust/falsifier/falsifier.hpp"
#include "stlrobust/optim/optimizer.hpp"
#include "stlrobust/stl/formula.hpp"
#include "stlrobust/systems/registry.hpp"

namespace stlrobust::campaign {

/// Invalid or unreadable configuration. what() starts with the JSON path of
/// the offending field, e.g. "plant: unknown plant id 'x'".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message);
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct GridScanConfig {
  std::size_t resolution = 20;
  /// Defaults to the campaign lower budget.
  std::optional<std::size_t> lower_budget;
  std::uint64_t seed = 0;
};

struct EvalConfig {
  std::vector<double> deviation;
  /// Defaults to the center of the plant's scenario space.
  std::optional<std::vector<double>> scenario;
  std::optional<std::filesystem::path> trajectory_csv;
};

struct CampaignConfig {
  std::string plant_id;
  /// Parsed specification; the plant's shipped one when "spec" is absent.
  stl::FormulaPtr spec;
  systems::PlantOptions plant_options;
  /// Built from plant_id and plant_options.
  systems::PlantPtr plant;
  falsifier::Mode mode = falsifier::Mode::MinViolation;
  std::vector<optim::OptimizerKind> optimizers{optim::OptimizerKind::CmaEs,
                                               optim::OptimizerKind::Random};
  double p = 2.0;
  std::size_t upper_budget = 100;
  std::size_t lower_budget = 50;
  std::vector<std::uint64_t> seeds{0, 1, 2};
  std::filesystem::path output_dir = "out";
  GridScanConfig gridscan;
  std::optional<EvalConfig> eval;
};

/// Parses and validates a JSON document. Throws ConfigError.
CampaignConfig parse_config(std::string_view json_text);
CampaignConfig load_config(const std::filesystem::path& path);

}  // namespace stlrobust::campaign
