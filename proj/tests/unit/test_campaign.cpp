#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "stlrobust/campaign/campaign.hpp"
#include "stlrobust/cli.hpp"
#include "stlrobust/stl/parser.hpp"
#include "stlrobust/util/csv.hpp"

using namespace stlrobust;
using namespace stlrobust::campaign;
namespace fs = std::filesystem;

namespace {

fs::path config_dir() {
  const char* dir = std::getenv("STLROBUST_CONFIG_DIR");
  return dir ? fs::path(dir) : fs::path("configs");
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "stlrobust-tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  args.insert(args.begin(), "stlrobust");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

std::string config_error_field(const std::string& json) {
  try {
    parse_config(json);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<no error>";
}

std::vector<fs::path> files_in(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) out.push_back(e.path().filename());
  std::sort(out.begin(), out.end());
  return out;
}

void require_same_tree(const fs::path& a, const fs::path& b) {
  REQUIRE(files_in(a) == files_in(b));
  for (const auto& name : files_in(a)) {
    INFO(name.string());
    REQUIRE(slurp(a / name) == slurp(b / name));
  }
}

}  // namespace

TEST_CASE("Config validation names the failing field", "[campaign][config]") {
  REQUIRE(config_error_field(R"({"plant": "lunar-lander"})") == "plant");
  REQUIRE(config_error_field(R"({})") == "plant");
  REQUIRE(config_error_field(R"({"plant": "cartpole", "budget": 3})") == "budget");
  REQUIRE(config_error_field(R"j({"plant": "cartpole", "spec": "G[0,1] (speed < 1)"})j") == "spec");
  REQUIRE(config_error_field(R"({"plant": "cartpole", "spec": "G[0,1] (x <"})") == "spec");
  REQUIRE(config_error_field(R"j({"plant": "cartpole", "spec": "G[0,100] (x < 1)"})j") == "spec");
  REQUIRE(config_error_field(R"({"plant": "cartpole", "mode": "fast"})") == "mode");
  REQUIRE(config_error_field(R"({"plant": "cartpole", "optimizers": ["nsga2"]})") == "optimizers[0]");
  REQUIRE(config_error_field(R"({"plant": "cartpole", "p": 0.5})") == "p");
  REQUIRE(config_error_field(R"({"plant": "cartpole", "upper_budget": 0})") == "upper_budget");
  REQUIRE(config_error_field(R"({"plant": "cartpole", "seeds": [1, 2], "repetitions": 3})") == "repetitions");
  REQUIRE(config_error_field(R"({"plant": "cartpole", "plant_overrides": {"gravitee": 1}})") ==
          "plant_overrides");
  REQUIRE(config_error_field(R"({"plant": "cartpole", "deviation_domain": [
            {"name": "force", "lower": 5, "upper": 20, "zero": 10},
            {"name": "cart_mass", "lower": 0.5, "upper": 2, "zero": 1}]})") == "deviation_domain");
  REQUIRE(config_error_field(R"({"plant": "cartpole", "deviation_domain": [
            {"name": "cart_mass", "lower": 0.5, "upper": 2, "zero": 3},
            {"name": "force", "lower": 5, "upper": 20, "zero": 10}]})") == "deviation_domain");
  REQUIRE(config_error_field(R"({"plant": "cartpole", "gridscan": {"resolution": 0}})") ==
          "gridscan.resolution");
  REQUIRE(config_error_field(R"({"plant": "cartpole", "eval": {"deviation": [1, 30]}})") == "eval.deviation");
  REQUIRE(config_error_field(R"({"plant": "cartpole", "eval": {"deviation": [1, 10], "scenario": [1, 0, 0, 0]}})") ==
          "eval.scenario");
  REQUIRE(config_error_field("{not json") == "");
}

TEST_CASE("Config defaults and overrides", "[campaign][config]") {
  const auto cfg = parse_config(R"({"plant": "watertank", "repetitions": 2, "p": "inf",
                                    "plant_overrides": {"reference": 1.2}})");
  REQUIRE(cfg.seeds == std::vector<std::uint64_t>{0, 1});
  REQUIRE(std::isinf(cfg.p));
  REQUIRE(cfg.upper_budget == 100);
  REQUIRE(cfg.lower_budget == 50);
  REQUIRE(cfg.mode == falsifier::Mode::MinViolation);
  REQUIRE(cfg.optimizers.size() == 2);
  REQUIRE(cfg.gridscan.resolution == 20);
  REQUIRE(stl::to_string(*cfg.spec) ==
          stl::to_string(*stl::parse_formula(cfg.plant->default_specification())));
  bool found = false;
  for (const auto& [key, value] : cfg.plant->parameters())
    if (key == "reference") found = value == 1.2;
  REQUIRE(found);

  for (const auto& entry : fs::directory_iterator(config_dir())) {
    INFO(entry.path().string());
    REQUIRE_NOTHROW(load_config(entry.path()));
  }
}

TEST_CASE("Summary statistics", "[campaign][summary]") {
  const std::vector<double> xs{1.0, 2.0, 4.0};
  const auto s = describe(xs);
  REQUIRE(s.has_value());
  REQUIRE(s->mean == Catch::Approx(7.0 / 3.0));
  REQUIRE(s->std == Catch::Approx(std::sqrt((16.0 / 9 + 1.0 / 9 + 25.0 / 9) / 3.0)));
  REQUIRE(s->min == 1.0);
  REQUIRE(s->max == 4.0);
  REQUIRE_FALSE(describe(std::vector<double>{}).has_value());
}

TEST_CASE("Falsify campaign on cart-pole", "[campaign][cli]") {
  const auto out = scratch("cartpole");
  std::string text;
  REQUIRE(run_cli({"falsify", (config_dir() / "cartpole.json").string(), "--out", out.string()}, &text) ==
          cli::kExitOk);
  REQUIRE(text.find("cma-es") != std::string::npos);

  std::size_t reports = 0, logs = 0;
  for (const auto& name : files_in(out)) {
    reports += name.string().rfind("report_", 0) == 0;
    logs += name.string().rfind("log_", 0) == 0;
  }
  REQUIRE(reports == 6);
  REQUIRE(logs == 6);
  REQUIRE(fs::exists(out / "report_cma-es_2.json"));
  REQUIRE(fs::exists(out / "summary.txt"));

  const auto summary = util::parse_csv(slurp(out / "summary.csv"));
  REQUIRE(summary.rows.size() == 6);

  SECTION("summary equals statistics recomputed from the logs") {
    for (const auto& row : summary.rows) {
      const auto opt = row[summary.column("optimizer")];
      const auto seed = row[summary.column("seed")];
      const auto log = util::parse_csv(slurp(out / ("log_" + opt + "_" + seed + ".csv")));
      std::vector<double> d;
      for (const auto& r : log.rows)
        if (r[log.column("is_violation")] == "1") d.push_back(std::stod(r[log.column("distance")]));
      REQUIRE(std::stoul(row[summary.column("violations")]) == d.size());
      REQUIRE(std::stoul(row[summary.column("total")]) == log.rows.size());
      if (d.empty()) {
        REQUIRE(row[summary.column("distance_mean")].empty());
        continue;
      }
      double mean = 0.0;
      for (double x : d) mean += x;
      mean /= static_cast<double>(d.size());
      double var = 0.0;
      for (double x : d) var += (x - mean) * (x - mean);
      const double sd = std::sqrt(var / static_cast<double>(d.size()));
      REQUIRE(std::abs(std::stod(row[summary.column("distance_mean")]) - mean) <= 1e-12);
      REQUIRE(std::abs(std::stod(row[summary.column("distance_std")]) - sd) <= 1e-12);
      REQUIRE(std::stod(row[summary.column("distance_min")]) == *std::min_element(d.begin(), d.end()));
      REQUIRE(std::stod(row[summary.column("distance_max")]) == *std::max_element(d.begin(), d.end()));
      REQUIRE(std::stod(row[summary.column("best_distance")]) == *std::min_element(d.begin(), d.end()));

      const auto report = nlohmann::json::parse(slurp(out / ("report_" + opt + "_" + seed + ".json")));
      REQUIRE(report["best"]["distance"].get<double>() == *std::min_element(d.begin(), d.end()));
    }
  }

  SECTION("reruns are byte-identical, with or without threads") {
    const auto again = scratch("cartpole-again");
    REQUIRE(run_cli({"falsify", (config_dir() / "cartpole.json").string(), "--out", again.string(), "--jobs", "3"}) ==
            cli::kExitOk);
    require_same_tree(out, again);
  }

  SECTION("seed offset shifts the run seeds") {
    const auto shifted = scratch("cartpole-shifted");
    auto cfg = load_config(config_dir() / "linear-safe.json");
    const auto outcome = run_falsify(cfg, {.output_dir = shifted, .seed_offset = 10});
    REQUIRE(outcome.reports.size() == 3);
    REQUIRE(outcome.reports[0].seed == 10);
    REQUIRE(fs::exists(shifted / "report_cma-es_12.json"));
  }
}

TEST_CASE("Linear-safe campaign reaches the analytic minimum", "[campaign]") {
  auto cfg = load_config(config_dir() / "linear-safe.json");
  const auto outcome = run_falsify(cfg, {.output_dir = scratch("linear-safe")});
  int close = 0;
  for (const auto& row : outcome.summary) {
    REQUIRE(row.best_distance.has_value());
    close += std::abs(*row.best_distance - std::sqrt(0.5)) <= 0.1 * std::sqrt(0.5);
  }
  REQUIRE(close >= 2);
}

TEST_CASE("Grid scan command", "[campaign][cli]") {
  const auto out = scratch("grid");
  const auto cfg_path = out / "grid5.json";
  std::ofstream(cfg_path) << R"({"plant": "watertank", "lower_budget": 5, "gridscan": {"resolution": 5}})";
  REQUIRE(run_cli({"gridscan", cfg_path.string(), "--out", (out / "a").string()}) == cli::kExitOk);
  const auto table = util::parse_csv(slurp(out / "a" / "grid.csv"));
  REQUIRE(table.header == std::vector<std::string>{"dev1", "dev2", "gamma", "evals"});
  REQUIRE(table.rows.size() == 25);
  for (const auto& row : table.rows) REQUIRE(std::isfinite(std::stod(row[2])));
  REQUIRE(nlohmann::json::parse(slurp(out / "a" / "grid.json"))["cells"].size() == 25);

  REQUIRE(run_cli({"gridscan", cfg_path.string(), "--out", (out / "b").string(), "--jobs", "4"}) == cli::kExitOk);
  require_same_tree(out / "a", out / "b");

  const auto four = out / "four.json";
  std::ofstream(four) << R"({"plant": "cartpole4"})";
  REQUIRE(run_cli({"gridscan", four.string(), "--out", (out / "c").string()}) == cli::kExitConfigError);
}

TEST_CASE("Eval command", "[campaign][cli]") {
  const auto out = scratch("eval");

  SECTION("linear-safe on the boundary") {
    std::string text;
    REQUIRE(run_cli({"eval", (config_dir() / "linear-safe.json").string(), "--out", out.string()}, &text) ==
            cli::kExitOk);
    REQUIRE(text == "rho = 0\n");
  }

  SECTION("cart-pole nominal from rest") {
    const auto path = out / "rest.json";
    std::ofstream(path) << R"({"plant": "cartpole", "eval": {"deviation": [1, 10], "scenario": [0, 0, 0, 0],
                                "trajectory_csv": "rest.csv"}})";
    const auto result = run_eval(load_config(path), {.output_dir = out});
    REQUIRE(result.rho >= 0.0);
    const auto table = util::parse_csv(slurp(out / "rest.csv"));
    REQUIRE(table.header == std::vector<std::string>{"time", "x", "x_dot", "theta", "theta_dot"});
    REQUIRE(table.rows.size() == 401);
  }

  SECTION("cart-pole with doubled force on a lower-layer witness") {
    auto cfg = load_config(config_dir() / "cartpole.json");
    auto inst = systems::instantiate(cfg.plant, systems::Deviation{{1.0, 20.0}});
    const auto witness = falsifier::lower_falsify(inst, *cfg.spec, 50, 1);
    REQUIRE(witness.gamma < 0.0);
    cfg.eval = EvalConfig{{1.0, 20.0}, witness.witness_scenario, std::nullopt};
    REQUIRE(run_eval(cfg, {.output_dir = out}).rho < 0.0);
  }

  SECTION("missing eval section") {
    REQUIRE_THROWS_AS(run_eval(parse_config(R"({"plant": "acc"})")), ConfigError);
  }
}

TEST_CASE("CLI exit codes", "[cli]") {
  const auto out = scratch("exit-codes");
  std::string text, err;
  REQUIRE(run_cli({"--help"}, &text) == cli::kExitOk);
  REQUIRE(text.find("falsify") != std::string::npos);
  REQUIRE(run_cli({}) == cli::kExitConfigError);
  REQUIRE(run_cli({"explode", "x.json"}) == cli::kExitConfigError);
  REQUIRE(run_cli({"falsify", (out / "missing.json").string()}) == cli::kExitConfigError);
  REQUIRE(run_cli({"falsify", (config_dir() / "linear-safe.json").string(), "--jobs", "0"}) == cli::kExitConfigError);

  const auto bad = out / "bad.json";
  std::ofstream(bad) << R"({"plant": "lunar-lander"})";
  REQUIRE(run_cli({"falsify", bad.string()}, nullptr, &err) == cli::kExitConfigError);
  REQUIRE(err.find("plant") != std::string::npos);

  // Output directory that cannot be created: a regular file is in the way.
  std::ofstream(out / "blocker") << "x";
  REQUIRE(run_cli({"falsify", (config_dir() / "linear-safe.json").string(), "--out", (out / "blocker" / "sub").string()},
              nullptr, &err) == cli::kExitRuntimeError);
}
