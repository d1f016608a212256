#include "stlrobust/campaign/campaign.hpp"

#include <fstream>

#include "stlrobust/falsifier/report_io.hpp"
#include "stlrobust/stl/evaluate.hpp"
#include "stlrobust/util/csv.hpp"

namespace stlrobust::campaign {

namespace fs = std::filesystem;

namespace {

fs::path output_dir(const CampaignConfig& config, const RunSettings& settings) {
  const auto dir = settings.output_dir.value_or(config.output_dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
  if (!out.flush()) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::uint64_t shifted(std::uint64_t seed, std::int64_t offset) {
  return seed + static_cast<std::uint64_t>(offset);
}

}  // namespace

FalsifyOutcome run_falsify(const CampaignConfig& config, const RunSettings& settings) {
  FalsifyOutcome outcome;
  outcome.output_dir = output_dir(config, settings);

  for (const auto kind : config.optimizers) {
    for (const auto base_seed : config.seeds) {
      falsifier::FalsificationProblem problem;
      problem.plant = config.plant;
      problem.specification = config.spec;
      problem.mode = config.mode;
      problem.p = config.p;
      problem.upper_budget = config.upper_budget;
      problem.lower_budget = config.lower_budget;
      problem.seed = shifted(base_seed, settings.seed_offset);

      auto report = falsifier::falsify(problem, kind, settings.jobs);
      const auto stem = std::string(optim::to_string(kind)) + "_" + std::to_string(problem.seed);
      write_file(outcome.output_dir / ("report_" + stem + ".json"), falsifier::report_json(report));
      write_file(outcome.output_dir / ("log_" + stem + ".csv"), falsifier::sample_log_csv(report));
      outcome.summary.push_back(summarize(report));
      outcome.reports.push_back(std::move(report));
    }
  }

  const auto spec_text = stl::to_string(*config.spec);
  write_file(outcome.output_dir / "summary.csv", summary_csv(config.plant_id, outcome.summary));
  write_file(outcome.output_dir / "summary.txt",
             summary_text(config.plant_id, spec_text, outcome.summary));
  return outcome;
}

gridscan::GridScanResult run_gridscan(const CampaignConfig& config, const RunSettings& settings) {
  if (config.plant->deviation_domain().size() != 2)
    throw ConfigError("deviation_domain", "grid scan needs exactly 2 dimensions, got " +
                                              std::to_string(config.plant->deviation_domain().size()));
  const auto dir = output_dir(config, settings);
  gridscan::ScanOptions options;
  options.resolution = config.gridscan.resolution;
  options.lower_budget = config.gridscan.lower_budget.value_or(config.lower_budget);
  options.seed = shifted(config.gridscan.seed, settings.seed_offset);
  options.jobs = settings.jobs;

  auto result = gridscan::scan(config.plant, *config.spec, options);
  write_file(dir / "grid.csv", gridscan::export_csv(result));
  write_file(dir / "grid.json", gridscan::export_json(result));
  return result;
}

std::string trajectory_csv(const stl::Signal& signal) {
  std::vector<std::string> header{"time"};
  for (const auto& c : signal.channels()) header.push_back(c);
  util::CsvWriter out(header);
  for (std::size_t i = 0; i < signal.length(); ++i) {
    out.cell(signal.time_of(i));
    for (double v : signal.row(i)) out.cell(v);
    out.end_row();
  }
  return out.str();
}

EvalOutcome run_eval(const CampaignConfig& config, const RunSettings& settings) {
  if (!config.eval) throw ConfigError("eval", "missing");
  const auto& eval = *config.eval;
  const auto instance = systems::instantiate(config.plant, systems::Deviation{eval.deviation});
  const auto scenario = eval.scenario.value_or(config.plant->scenario_space().center());
  auto trajectory = systems::simulate(instance, scenario);
  const double rho = stl::evaluate(*config.spec, trajectory.signal, 0);
  if (eval.trajectory_csv) {
    auto path = *eval.trajectory_csv;
    if (path.is_relative()) path = output_dir(config, settings) / path;
    write_file(path, trajectory_csv(trajectory.signal));
  }
  return EvalOutcome{rho, std::move(trajectory.signal), std::move(trajectory.scenario)};
}

}  // namespace stlrobust::campaign
