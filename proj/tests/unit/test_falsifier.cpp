#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <json.hpp>

#include "stlrobust/falsifier/falsifier.hpp"
#include "stlrobust/falsifier/report_io.hpp"
#include "stlrobust/stl/errors.hpp"
#include "stlrobust/stl/evaluate.hpp"
#include "stlrobust/stl/parser.hpp"
#include "stlrobust/systems/registry.hpp"
#include "stlrobust/util/csv.hpp"

using namespace stlrobust;
using namespace stlrobust::falsifier;
using systems::Deviation;
using systems::DeviationDomain;

namespace {

FalsificationProblem linear_problem(std::uint64_t seed, std::optional<DeviationDomain> domain = {}) {
  systems::PlantOptions opts;
  opts.domain = std::move(domain);
  FalsificationProblem problem;
  problem.plant = systems::make_plant("linear-safe", opts);
  problem.specification = stl::parse_formula(problem.plant->default_specification());
  problem.lower_budget = 1;
  problem.seed = seed;
  return problem;
}

}  // namespace

TEST_CASE("Normalisation and distance", "[falsifier]") {
  const auto cartpole = systems::make_plant("cartpole")->deviation_domain();

  SECTION("normalize") {
    REQUIRE(normalize(Deviation{{0.5, 5.0}}, cartpole) == std::vector<double>{0.0, 0.0});
    REQUIRE(normalize(Deviation{{2.0, 20.0}}, cartpole) == std::vector<double>{1.0, 1.0});
    const auto zero = normalize(cartpole.zero(), cartpole);
    REQUIRE(zero[0] == Catch::Approx(0.5 / 1.5));
    REQUIRE(zero[1] == Catch::Approx(5.0 / 15.0));
    REQUIRE_THROWS_AS(normalize(Deviation{{2.5, 10.0}}, cartpole), systems::DomainError);
  }

  SECTION("distance") {
    REQUIRE(distance(cartpole.zero(), cartpole) == 0.0);
    const DeviationDomain dom({{"a", 0.0, 1.0}, {"b", 0.0, 1.0}}, {0.33, 0.33});
    REQUIRE(distance(Deviation{{1.0, 1.0}}, dom) == Catch::Approx(std::sqrt(2.0 * 0.67 * 0.67)));
    REQUIRE(distance(Deviation{{1.0, 1.0}}, dom) == Catch::Approx(0.9475).margin(1e-4));
    REQUIRE(distance(Deviation{{1.0, 0.5}}, dom, 1.0) == Catch::Approx(0.67 + 0.17));
    REQUIRE(distance(Deviation{{1.0, 0.5}}, dom, INFINITY) == Catch::Approx(0.67));
    REQUIRE_THROWS_AS(distance(Deviation{{1.0, 1.5}}, dom), systems::DomainError);
  }

  SECTION("norm ordering on random points") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> m(0.5, 2.0), f(5.0, 20.0);
    for (int i = 0; i < 200; ++i) {
      const Deviation d{{m(rng), f(rng)}};
      const double l1 = distance(d, cartpole, 1.0), l2 = distance(d, cartpole, 2.0);
      const double linf = distance(d, cartpole, INFINITY);
      REQUIRE(l1 >= l2);
      REQUIRE(l2 >= linf);
      REQUIRE(l2 <= max_distance(cartpole));
    }
  }

  SECTION("largest distance") {
    REQUIRE(max_distance(cartpole) == Catch::Approx(std::sqrt(2.0)));
    REQUIRE(max_distance(cartpole, 1.0) == 2.0);
    REQUIRE(max_distance(cartpole, INFINITY) == 1.0);
  }
}

TEST_CASE("Upper-layer objective", "[falsifier]") {
  const DeviationDomain dom({{"a", 0.0, 1.0}, {"b", 0.0, 1.0}}, {0.0, 0.0});
  REQUIRE(objective(Mode::AnyViolation, Deviation{{0.5, 0.5}}, -0.3, dom) == -0.3);
  REQUIRE(objective(Mode::MinViolation, Deviation{{0.9, 0.1}}, 0.2, dom) ==
          Catch::Approx(1.6142).margin(1e-4));
  REQUIRE(objective(Mode::MinViolation, Deviation{{0.4, 0.0}}, -0.01, dom) == Catch::Approx(0.4));
  REQUIRE(objective(Mode::MinViolation, Deviation{{1.0, 1.0}}, -0.01, dom) <
          objective(Mode::MinViolation, Deviation{{0.0, 0.0}}, 0.0, dom));
  REQUIRE(parse_mode("min-violation") == Mode::MinViolation);
  REQUIRE(to_string(Mode::AnyViolation) == "any-violation");
  REQUIRE_THROWS_AS(parse_mode("fastest"), std::invalid_argument);
}

TEST_CASE("Lower layer", "[falsifier][lower]") {
  SECTION("linear-safe value is scenario independent") {
    auto inst = systems::instantiate("linear-safe", Deviation{{0.8, 0.8}});
    auto phi = stl::parse_formula(inst.plant->default_specification());
    const auto r = lower_falsify(inst, *phi, 10, 4);
    REQUIRE(r.gamma == Catch::Approx(-0.6).margin(1e-15));
    REQUIRE(r.evaluations == 10);
  }

  SECTION("gamma is the value of the witness trajectory") {
    for (const std::string id : {"cartpole", "watertank", "acc"}) {
      auto plant = systems::make_plant(id);
      auto inst = systems::instantiate(plant, plant->deviation_domain().zero());
      auto phi = stl::parse_formula(plant->default_specification());
      const auto r = lower_falsify(inst, *phi, 20, 9);
      INFO(id);
      REQUIRE(r.evaluations <= 20);
      REQUIRE_FALSE(r.blew_up);
      REQUIRE(r.gamma == stl::evaluate(*phi, r.witness_trajectory));
      REQUIRE(systems::simulate(inst, r.witness_scenario).signal == r.witness_trajectory);
      REQUIRE(lower_falsify(inst, *phi, 20, 9).gamma == r.gamma);
    }
  }

  SECTION("cart-pole: nominal holds, doubled force breaks") {
    auto phi = stl::parse_formula(systems::make_plant("cartpole")->default_specification());
    const auto nominal = lower_falsify(systems::instantiate("cartpole", Deviation{{1.0, 10.0}}), *phi, 50, 1);
    REQUIRE(nominal.gamma >= 0.0);
    const auto deviated = lower_falsify(systems::instantiate("cartpole", Deviation{{1.0, 20.0}}), *phi, 50, 1);
    REQUIRE(deviated.gamma < 0.0);
  }

  SECTION("horizon and budget checks") {
    auto inst = systems::instantiate("linear-safe", Deviation{{0.1, 0.1}});
    REQUIRE_THROWS_AS(lower_falsify(inst, *stl::parse_formula("G[0,5] (c > 0)"), 5, 0), stl::HorizonError);
    REQUIRE_THROWS_AS(lower_falsify(inst, *stl::parse_formula("c > 0"), 0, 0), std::invalid_argument);
  }

  SECTION("divergence gives the sentinel") {
    systems::PlantOptions opts;
    opts.overrides["gravity"] = 1e300;
    opts.overrides["theta_limit"] = 1e308;
    opts.overrides["x_limit"] = 1e308;
    auto plant = systems::make_plant("cartpole", opts);
    auto inst = systems::instantiate(plant, Deviation{{1.0, 10.0}});
    const auto r = lower_falsify(inst, *stl::parse_formula("G[0,1] (abs(theta) < 1)"), 30, 2);
    REQUIRE(r.blew_up);
    REQUIRE(r.gamma == kBlowUpGamma);
    REQUIRE(r.witness_scenario.size() == 4);
  }
}

TEST_CASE("Two-layer search on linear-safe", "[falsifier][upper]") {
  const auto kind = GENERATE(optim::OptimizerKind::CmaEs, optim::OptimizerKind::Random);
  const auto problem = linear_problem(5);
  const auto report = falsify(problem, kind);
  INFO(optim::to_string(kind));

  SECTION("report invariants") {
    REQUIRE(report.total() == 100);
    std::size_t violations = 0;
    double running = INFINITY;
    for (std::size_t i = 0; i < report.samples.size(); ++i) {
      const auto& s = report.samples[i];
      REQUIRE(s.index == i);
      REQUIRE(s.lower_evaluations == 1);
      REQUIRE(s.lower_seed == lower_seed(5, i));
      REQUIRE(s.gamma == Catch::Approx(1.0 - s.deviation[0] - s.deviation[1]).margin(1e-15));
      REQUIRE(s.violation == (s.gamma < 0.0));
      REQUIRE(s.distance == distance(s.deviation, problem.plant->deviation_domain()));
      if (s.violation) {
        ++violations;
        running = std::min(running, s.distance);
      }
    }
    REQUIRE(report.violations == violations);
    REQUIRE(report.best() != nullptr);
    REQUIRE(report.best()->distance == running);
    REQUIRE(report.best()->violation);
  }

  SECTION("logged values re-evaluate exactly") {
    for (std::size_t i = 0; i < report.samples.size(); i += 17) {
      const auto& s = report.samples[i];
      auto inst = systems::instantiate(problem.plant, s.deviation);
      REQUIRE(lower_falsify(inst, *problem.specification, problem.lower_budget, s.lower_seed).gamma == s.gamma);
    }
  }

  SECTION("min-mode dominance") {
    double worst_violating = -INFINITY, best_satisfying = INFINITY;
    for (const auto& s : report.samples) {
      if (s.violation)
        worst_violating = std::max(worst_violating, s.objective);
      else
        best_satisfying = std::min(best_satisfying, s.objective);
    }
    REQUIRE(worst_violating < best_satisfying);
  }

  SECTION("parallel evaluation does not change the report") {
    const auto parallel = falsify(problem, kind, 3);
    REQUIRE(report_json(parallel) == report_json(report));
    REQUIRE(sample_log_csv(parallel) == sample_log_csv(report));
  }
}

TEST_CASE("CMA-ES finds the closest violation on linear-safe", "[falsifier][upper]") {
  int hits = 0;
  for (std::uint64_t seed : {0, 1, 2}) {
    const auto report = falsify(linear_problem(seed), optim::OptimizerKind::CmaEs);
    REQUIRE(report.best() != nullptr);
    if (std::abs(report.best()->distance - 1.0 / std::sqrt(2.0)) <= 0.1 / std::sqrt(2.0)) ++hits;
  }
  REQUIRE(hits >= 2);
}

TEST_CASE("A box with no violation gives an empty best", "[falsifier][upper]") {
  const DeviationDomain safe({{"delta_1", 0.0, 0.4}, {"delta_2", 0.0, 0.4}}, {0.0, 0.0});
  for (auto kind : {optim::OptimizerKind::CmaEs, optim::OptimizerKind::Random}) {
    const auto report = falsify(linear_problem(1, safe), kind);
    REQUIRE(report.violations == 0);
    REQUIRE(report.total() == 100);
    REQUIRE(report.best() == nullptr);
    REQUIRE(nlohmann::json::parse(report_json(report))["best"].is_null());
  }
}

TEST_CASE("Any-violation mode tracks the lowest gamma", "[falsifier][upper]") {
  auto problem = linear_problem(2);
  problem.mode = Mode::AnyViolation;
  problem.upper_budget = 30;
  const auto report = falsify(problem, optim::OptimizerKind::CmaEs);
  double lowest = INFINITY;
  for (const auto& s : report.samples) {
    REQUIRE(s.objective == s.gamma);
    lowest = std::min(lowest, s.gamma);
  }
  REQUIRE(report.best() != nullptr);
  REQUIRE(report.best()->gamma == lowest);
}

TEST_CASE("Invalid problems", "[falsifier][errors]") {
  auto problem = linear_problem(0);
  problem.upper_budget = 0;
  REQUIRE_THROWS_AS(falsify(problem, optim::OptimizerKind::CmaEs), std::invalid_argument);
  problem = linear_problem(0);
  problem.p = 0.5;
  REQUIRE_THROWS_AS(falsify(problem, optim::OptimizerKind::CmaEs), std::invalid_argument);
  problem = linear_problem(0);
  problem.specification = stl::parse_formula("F[0,3] (c > 0)");
  REQUIRE_THROWS_AS(falsify(problem, optim::OptimizerKind::CmaEs), stl::HorizonError);
}

TEST_CASE("Report serialisation", "[falsifier][io]") {
  auto problem = linear_problem(8);
  problem.upper_budget = 12;
  const auto report = falsify(problem, optim::OptimizerKind::Random);

  const auto doc = nlohmann::json::parse(report_json(report));
  REQUIRE(doc["plant"] == "linear-safe");
  REQUIRE(doc["optimizer"] == "random");
  REQUIRE(doc["total"] == 12);
  REQUIRE(doc["samples"].size() == 12);
  REQUIRE(doc["violations"] == report.violations);
  REQUIRE(doc["samples"][3]["gamma"].get<double>() == report.samples[3].gamma);
  REQUIRE(doc["domain"][1]["name"] == "delta_2");
  REQUIRE_FALSE(doc.contains("wall_clock_seconds"));

  const auto table = util::parse_csv(sample_log_csv(report));
  REQUIRE(table.header == std::vector<std::string>{"index", "delta_1", "delta_2", "gamma", "objective",
                                                   "distance", "is_violation", "lower_evals"});
  REQUIRE(table.rows.size() == 12);
  for (std::size_t i = 0; i < 12; ++i) {
    REQUIRE(std::stod(table.rows[i][table.column("distance")]) == report.samples[i].distance);
    REQUIRE(table.rows[i][table.column("is_violation")] == (report.samples[i].violation ? "1" : "0"));
  }
  REQUIRE(report_json(report) == report_json(falsify(problem, optim::OptimizerKind::Random)));
}
