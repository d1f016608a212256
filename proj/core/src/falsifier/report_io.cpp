#include "stlrobust/falsifier/report_io.hpp"

#include <json.hpp>

#include "stlrobust/util/csv.hpp"

namespace stlrobust::falsifier {

namespace {

nlohmann::ordered_json sample_json(const SampleRecord& s) {
  return {{"index", s.index},
          {"deviation", s.deviation.values},
          {"gamma", s.gamma},
          {"objective", s.objective},
          {"distance", s.distance},
          {"violation", s.violation},
          {"blew_up", s.blew_up},
          {"lower_evals", s.lower_evaluations},
          {"lower_seed", s.lower_seed}};
}

}  // namespace

std::string report_json(const FalsificationReport& report) {
  nlohmann::ordered_json doc;
  doc["plant"] = report.plant;
  doc["specification"] = report.specification;
  doc["mode"] = std::string(to_string(report.mode));
  doc["optimizer"] = std::string(optim::to_string(report.optimizer));
  doc["seed"] = report.seed;
  doc["p"] = report.p;
  doc["upper_budget"] = report.upper_budget;
  doc["lower_budget"] = report.lower_budget;

  auto& dims = doc["domain"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < report.dimensions.size(); ++i) {
    const auto& d = report.dimensions[i];
    dims.push_back({{"name", d.name}, {"lower", d.lower}, {"upper", d.upper},
                    {"zero", report.zero.at(i)}});
  }

  doc["violations"] = report.violations;
  doc["total"] = report.total();
  if (const auto* best = report.best()) {
    doc["best"] = sample_json(*best);
  } else {
    doc["best"] = nullptr;
  }
  auto& samples = doc["samples"] = nlohmann::ordered_json::array();
  for (const auto& s : report.samples) samples.push_back(sample_json(s));
  return doc.dump(2) + "\n";
}

std::string sample_log_csv(const FalsificationReport& report) {
  std::vector<std::string> header{"index"};
  for (const auto& d : report.dimensions) header.push_back(d.name);
  for (const char* name : {"gamma", "objective", "distance", "is_violation", "lower_evals"})
    header.emplace_back(name);

  util::CsvWriter out(header);
  for (const auto& s : report.samples) {
    out.cell(static_cast<std::int64_t>(s.index));
    for (double v : s.deviation.values) out.cell(v);
    out.cell(s.gamma).cell(s.objective).cell(s.distance);
    out.cell(static_cast<std::int64_t>(s.violation ? 1 : 0));
    out.cell(static_cast<std::int64_t>(s.lower_evaluations));
    out.end_row();
  }
  return out.str();
}

}  // namespace stlrobust::falsifier
