#include "stlrobust/campaign/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "stlrobust/stl/errors.hpp"
#include "stlrobust/stl/parser.hpp"

namespace stlrobust::campaign {

using Json = nlohmann::json;

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::runtime_error(field.empty() ? message : field + ": " + message),
      field_(std::move(field)) {}

namespace {

std::string join(const std::string& parent, std::string_view key) {
  return parent.empty() ? std::string(key) : parent + "." + std::string(key);
}

std::string index_path(const std::string& parent, std::size_t i) {
  return parent + "[" + std::to_string(i) + "]";
}

void only_keys(const Json& object, const std::string& path, std::set<std::string_view> allowed) {
  for (const auto& [key, value] : object.items()) {
    if (!allowed.count(key)) throw ConfigError(join(path, key), "unknown field");
  }
}

const Json& require_object(const Json& value, const std::string& path) {
  if (!value.is_object()) throw ConfigError(path, "expected an object");
  return value;
}

double as_number(const Json& value, const std::string& path) {
  if (!value.is_number()) throw ConfigError(path, "expected a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "expected a finite number");
  return x;
}

std::uint64_t as_unsigned(const Json& value, const std::string& path) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (value.is_number_integer()) {
    if (value.get<std::int64_t>() >= 0) return value.get<std::uint64_t>();
  }
  throw ConfigError(path, "expected a non-negative integer");
}

std::size_t as_count(const Json& value, const std::string& path) {
  const auto n = as_unsigned(value, path);
  if (n == 0) throw ConfigError(path, "must be >= 1");
  return static_cast<std::size_t>(n);
}

std::string as_string(const Json& value, const std::string& path) {
  if (!value.is_string()) throw ConfigError(path, "expected a string");
  return value.get<std::string>();
}

std::vector<double> as_numbers(const Json& value, const std::string& path) {
  if (!value.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < value.size(); ++i) out.push_back(as_number(value[i], index_path(path, i)));
  return out;
}

systems::DeviationDomain parse_domain(const Json& value, const std::string& path) {
  if (!value.is_array() || value.empty())
    throw ConfigError(path, "expected a non-empty array of {name, lower, upper, zero}");
  std::vector<systems::Dimension> dims;
  std::vector<double> zero;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const auto where = index_path(path, i);
    const auto& entry = require_object(value[i], where);
    only_keys(entry, where, {"name", "lower", "upper", "zero"});
    for (const char* key : {"name", "lower", "upper", "zero"})
      if (!entry.contains(key)) throw ConfigError(join(where, key), "missing");
    dims.push_back({as_string(entry["name"], join(where, "name")),
                    as_number(entry["lower"], join(where, "lower")),
                    as_number(entry["upper"], join(where, "upper"))});
    zero.push_back(as_number(entry["zero"], join(where, "zero")));
  }
  try {
    return systems::DeviationDomain(std::move(dims), std::move(zero));
  } catch (const systems::DomainError& e) {
    throw ConfigError(path, e.what());
  }
}

void parse_gridscan(const Json& value, GridScanConfig& out) {
  const std::string path = "gridscan";
  require_object(value, path);
  only_keys(value, path, {"resolution", "lower_budget", "seed"});
  if (value.contains("resolution")) out.resolution = as_count(value["resolution"], join(path, "resolution"));
  if (value.contains("lower_budget"))
    out.lower_budget = as_count(value["lower_budget"], join(path, "lower_budget"));
  if (value.contains("seed")) out.seed = as_unsigned(value["seed"], join(path, "seed"));
}

EvalConfig parse_eval(const Json& value, const systems::Plant& plant) {
  const std::string path = "eval";
  require_object(value, path);
  only_keys(value, path, {"deviation", "scenario", "trajectory_csv"});
  if (!value.contains("deviation")) throw ConfigError(join(path, "deviation"), "missing");
  EvalConfig out;
  out.deviation = as_numbers(value["deviation"], join(path, "deviation"));
  try {
    plant.deviation_domain().require(systems::Deviation{out.deviation});
  } catch (const systems::DomainError& e) {
    throw ConfigError(join(path, "deviation"), e.what());
  }
  if (value.contains("scenario")) {
    out.scenario = as_numbers(value["scenario"], join(path, "scenario"));
    try {
      plant.scenario_space().require(*out.scenario);
    } catch (const systems::DomainError& e) {
      throw ConfigError(join(path, "scenario"), e.what());
    }
  }
  if (value.contains("trajectory_csv"))
    out.trajectory_csv = as_string(value["trajectory_csv"], join(path, "trajectory_csv"));
  return out;
}

}  // namespace

CampaignConfig parse_config(std::string_view json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  require_object(doc, "<root>");
  only_keys(doc, "", {"plant", "spec", "plant_overrides", "deviation_domain", "mode", "optimizers",
                      "p", "upper_budget", "lower_budget", "seeds", "repetitions", "output_dir",
                      "gridscan", "eval"});

  CampaignConfig cfg;
  if (!doc.contains("plant")) throw ConfigError("plant", "missing");
  cfg.plant_id = as_string(doc["plant"], "plant");
  const auto ids = systems::plant_ids();
  if (std::find(ids.begin(), ids.end(), cfg.plant_id) == ids.end()) {
    std::string known;
    for (const auto& id : ids) known += (known.empty() ? "" : ", ") + id;
    throw ConfigError("plant", "unknown plant id '" + cfg.plant_id + "' (known: " + known + ")");
  }

  if (doc.contains("plant_overrides")) {
    const auto& overrides = require_object(doc["plant_overrides"], "plant_overrides");
    for (const auto& [key, value] : overrides.items())
      cfg.plant_options.overrides[key] = as_number(value, join("plant_overrides", key));
  }
  if (doc.contains("deviation_domain"))
    cfg.plant_options.domain = parse_domain(doc["deviation_domain"], "deviation_domain");

  try {
    cfg.plant = systems::make_plant(cfg.plant_id, cfg.plant_options);
  } catch (const systems::DomainError& e) {
    throw ConfigError("deviation_domain", e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError("plant_overrides", e.what());
  }

  const std::string spec_text = doc.contains("spec") ? as_string(doc["spec"], "spec")
                                                     : cfg.plant->default_specification();
  try {
    cfg.spec = stl::parse_formula(spec_text);
  } catch (const stl::StlError& e) {
    throw ConfigError("spec", e.what());
  }
  for (const auto& channel : cfg.spec->channels()) {
    const auto& obs = cfg.plant->observables();
    if (std::find(obs.begin(), obs.end(), channel) == obs.end())
      throw ConfigError("spec", "unknown channel '" + channel + "' for plant '" + cfg.plant_id + "'");
  }
  const auto needed = cfg.spec->horizon_steps(cfg.plant->step_size());
  if (needed > cfg.plant->horizon())
    throw ConfigError("spec", "needs " + std::to_string(needed) + " steps but the plant simulates " +
                                  std::to_string(cfg.plant->horizon()));

  if (doc.contains("mode")) {
    try {
      cfg.mode = falsifier::parse_mode(as_string(doc["mode"], "mode"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("mode", e.what());
    }
  }
  if (doc.contains("optimizers")) {
    const auto& list = doc["optimizers"];
    if (!list.is_array() || list.empty()) throw ConfigError("optimizers", "expected a non-empty array");
    cfg.optimizers.clear();
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto where = index_path("optimizers", i);
      try {
        cfg.optimizers.push_back(optim::parse_optimizer_kind(as_string(list[i], where)));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(where, e.what());
      }
    }
  }
  if (doc.contains("p")) {
    if (doc["p"].is_string() && doc["p"].get<std::string>() == "inf") {
      cfg.p = std::numeric_limits<double>::infinity();
    } else {
      cfg.p = as_number(doc["p"], "p");
      if (cfg.p < 1.0) throw ConfigError("p", "must be >= 1");
    }
  }
  if (doc.contains("upper_budget")) cfg.upper_budget = as_count(doc["upper_budget"], "upper_budget");
  if (doc.contains("lower_budget")) cfg.lower_budget = as_count(doc["lower_budget"], "lower_budget");
  if (doc.contains("seeds")) {
    const auto& list = doc["seeds"];
    if (!list.is_array() || list.empty()) throw ConfigError("seeds", "expected a non-empty array");
    cfg.seeds.clear();
    for (std::size_t i = 0; i < list.size(); ++i)
      cfg.seeds.push_back(as_unsigned(list[i], index_path("seeds", i)));
  }
  if (doc.contains("repetitions")) {
    const auto reps = as_count(doc["repetitions"], "repetitions");
    if (!doc.contains("seeds")) {
      cfg.seeds.clear();
      for (std::size_t i = 0; i < reps; ++i) cfg.seeds.push_back(i);
    } else if (reps != cfg.seeds.size()) {
      throw ConfigError("repetitions", "is " + std::to_string(reps) + " but seeds lists " +
                                           std::to_string(cfg.seeds.size()));
    }
  }
  if (doc.contains("output_dir")) cfg.output_dir = as_string(doc["output_dir"], "output_dir");
  if (doc.contains("gridscan")) parse_gridscan(doc["gridscan"], cfg.gridscan);
  if (doc.contains("eval")) cfg.eval = parse_eval(doc["eval"], *cfg.plant);
  return cfg;
}

CampaignConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace stlrobust::campaign
