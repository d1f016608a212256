#include "stlrobust/cli.hpp"

#include <cstdio>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "stlrobust/campaign/campaign.hpp"
#include "stlrobust/stl/errors.hpp"
#include "stlrobust/util/csv.hpp"

namespace stlrobust::cli {

namespace {

struct Arguments {
  std::string config;
  std::int64_t seed_offset = 0;
  std::string out;
  std::size_t jobs = 1;
};

void add_common(CLI::App& command, Arguments& args) {
  command.add_option("config", args.config, "Campaign config (JSON)")->required();
  command.add_option("--seed-offset", args.seed_offset, "Added to every configured seed");
  command.add_option("--out", args.out, "Output directory (overrides output_dir)");
  command.add_option("--jobs", args.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

campaign::RunSettings settings_from(const Arguments& args) {
  campaign::RunSettings s;
  if (!args.out.empty()) s.output_dir = args.out;
  s.seed_offset = args.seed_offset;
  s.jobs = args.jobs;
  return s;
}

void print_falsify(const campaign::FalsifyOutcome& outcome, const campaign::CampaignConfig& cfg,
                   std::ostream& out) {
  out << campaign::summary_text(cfg.plant_id, stl::to_string(*cfg.spec), outcome.summary);
  out << "\nwrote " << outcome.reports.size() << " runs to " << outcome.output_dir.string() << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robustness falsification of controlled systems against STL specifications",
               "stlrobust"};
  app.require_subcommand(1);
  Arguments args;
  auto* falsify = app.add_subcommand("falsify", "Two-layer falsification campaign");
  auto* grid = app.add_subcommand("gridscan", "Lower-layer falsification over a 2-D deviation grid");
  auto* eval = app.add_subcommand("eval", "Simulate one deviation and scenario, print rho");
  for (auto* c : {falsify, grid, eval}) add_common(*c, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitConfigError;
  }

  try {
    const auto cfg = campaign::load_config(args.config);
    const auto settings = settings_from(args);
    if (falsify->parsed()) {
      print_falsify(campaign::run_falsify(cfg, settings), cfg, out);
    } else if (grid->parsed()) {
      const auto result = campaign::run_gridscan(cfg, settings);
      std::size_t negative = 0;
      for (const auto& c : result.cells) negative += c.gamma < 0.0;
      out << result.cells.size() << " cells, " << negative << " with gamma < 0\n";
    } else {
      const auto result = campaign::run_eval(cfg, settings);
      out << "rho = " << util::format_number(result.rho) << "\n";
    }
  } catch (const campaign::ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
  return kExitOk;
}

}  // namespace stlrobust::cli
