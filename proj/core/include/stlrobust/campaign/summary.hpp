#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stlrobust/falsifier/falsifier.hpp"

namespace stlrobust::campaign {

/// Population statistics (std divides by n).
struct DistanceStats {
  double mean = 0.0;
  double std = 0.0;
  double min = 0.0;
  double max = 0.0;
};

std::optional<DistanceStats> describe(std::span<const double> values);

/// Summary row for a single (optimizer, seed) run.
struct SummaryRow {
  std::string optimizer;
  std::uint64_t seed = 0;
  std::size_t violations = 0;
  std::size_t total = 0;
  /// Over every violating sample of the run; empty without violations.
  std::optional<DistanceStats> distance;
  /// Distance of delta*.
  std::optional<double> best_distance;
};

SummaryRow summarize(const falsifier::FalsificationReport& report);

/// Columns: plant, optimizer, seed, violations, total, distance_mean,
/// distance_std, distance_min, distance_max, best_distance. Missing
/// statistics are empty cells.
std::string summary_csv(const std::string& plant, const std::vector<SummaryRow>& rows);
std::string summary_text(const std::string& plant, const std::string& specification,
                         const std::vector<SummaryRow>& rows);

}  // namespace stlrobust::campaign
