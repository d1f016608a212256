#include "stlrobust/campaign/summary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "stlrobust/util/csv.hpp"

namespace stlrobust::campaign {

std::optional<DistanceStats> describe(std::span<const double> values) {
  if (values.empty()) return std::nullopt;
  const double n = static_cast<double>(values.size());
  DistanceStats s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / n;
  double squares = 0.0;
  for (double v : values) squares += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(squares / n);
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  return s;
}

SummaryRow summarize(const falsifier::FalsificationReport& report) {
  SummaryRow row;
  row.optimizer = std::string(optim::to_string(report.optimizer));
  row.seed = report.seed;
  row.violations = report.violations;
  row.total = report.total();
  std::vector<double> distances;
  for (const auto& s : report.samples)
    if (s.violation) distances.push_back(s.distance);
  row.distance = describe(distances);
  if (const auto* best = report.best()) row.best_distance = best->distance;
  return row;
}

std::string summary_csv(const std::string& plant, const std::vector<SummaryRow>& rows) {
  util::CsvWriter out({"plant", "optimizer", "seed", "violations", "total", "distance_mean",
                       "distance_std", "distance_min", "distance_max", "best_distance"});
  for (const auto& r : rows) {
    out.cell(plant).cell(r.optimizer).cell(std::to_string(r.seed));
    out.cell(static_cast<std::int64_t>(r.violations)).cell(static_cast<std::int64_t>(r.total));
    if (r.distance) {
      out.cell(r.distance->mean).cell(r.distance->std).cell(r.distance->min).cell(r.distance->max);
    } else {
      out.cell("").cell("").cell("").cell("");
    }
    if (r.best_distance) {
      out.cell(*r.best_distance);
    } else {
      out.cell("");
    }
    out.end_row();
  }
  return out.str();
}

std::string summary_text(const std::string& plant, const std::string& specification,
                         const std::vector<SummaryRow>& rows) {
  std::string text = "plant: " + plant + "\nspec:  " + specification + "\n\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-8s %20s %12s  %-28s %s\n", "opt", "seed", "viol/total",
                "distance mean+-std [min, max]", "best");
  text += line;
  for (const auto& r : rows) {
    const auto ratio = std::to_string(r.violations) + "/" + std::to_string(r.total);
    std::string stats = "-";
    if (r.distance) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "%.3f+-%.3f [%.3f, %.3f]", r.distance->mean, r.distance->std,
                    r.distance->min, r.distance->max);
      stats = buf;
    }
    std::string best = "-";
    if (r.best_distance) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.4f", *r.best_distance);
      best = buf;
    }
    std::snprintf(line, sizeof line, "%-8s %20llu %12s  %-28s %s\n", r.optimizer.c_str(),
                  static_cast<unsigned long long>(r.seed), ratio.c_str(), stats.c_str(), best.c_str());
    text += line;
  }
  return text;
}

}  // namespace stlrobust::campaign
