#include <chrono>
#include <stdexcept>

#include "stlrobust/falsifier/falsifier.hpp"
#include "stlrobust/stl/errors.hpp"
#include "stlrobust/util/csv.hpp"
#include "stlrobust/util/parallel.hpp"

namespace stlrobust::falsifier {

std::uint64_t lower_seed(std::uint64_t upper_seed, std::size_t index) noexcept {
  return util::derive_seed(upper_seed, index);
}

namespace {

void validate(const FalsificationProblem& problem) {
  if (!problem.plant) throw std::invalid_argument("falsification problem has no plant");
  if (!problem.specification) throw std::invalid_argument("falsification problem has no specification");
  if (problem.upper_budget == 0 || problem.lower_budget == 0)
    throw std::invalid_argument("budgets must be >= 1");
  if (!(problem.p >= 1.0)) throw std::invalid_argument("distance order p must be >= 1");
  const auto needed = problem.specification->horizon_steps(problem.plant->step_size());
  if (needed > problem.plant->horizon())
    throw stl::HorizonError("specification needs " + std::to_string(needed) +
                            " steps but plant '" + problem.plant->id() + "' simulates " +
                            std::to_string(problem.plant->horizon()));
}

// UpdateBest: strict comparison keeps the earliest sample on ties.
bool improves(Mode mode, const SampleRecord& candidate, const SampleRecord* incumbent) {
  if (!candidate.violation) return false;
  if (!incumbent) return true;
  return mode == Mode::MinViolation ? candidate.distance < incumbent->distance
                                    : candidate.gamma < incumbent->gamma;
}

}  // namespace

FalsificationReport falsify(const FalsificationProblem& problem, optim::OptimizerKind kind,
                            std::size_t jobs) {
  validate(problem);
  const auto started = std::chrono::steady_clock::now();
  const auto& domain = problem.plant->deviation_domain();

  FalsificationReport report;
  report.plant = problem.plant->id();
  report.specification = stl::to_string(*problem.specification);
  report.mode = problem.mode;
  report.optimizer = kind;
  report.seed = problem.seed;
  report.p = problem.p;
  report.upper_budget = problem.upper_budget;
  report.lower_budget = problem.lower_budget;
  report.dimensions = domain.dimensions();
  report.zero = domain.zero().values;

  std::vector<double> lower, upper;
  for (const auto& d : domain.dimensions()) {
    lower.push_back(d.lower);
    upper.push_back(d.upper);
  }
  auto search = optim::make_optimizer(kind, optim::SearchBox(lower, upper), problem.seed,
                                      problem.upper_budget);

  while (search->remaining() > 0) {
    const auto batch = search->ask();
    const std::size_t base = report.samples.size();
    std::vector<SampleRecord> records(batch.size());

    util::parallel_for(batch.size(), jobs, [&](std::size_t i) {
      auto& rec = records[i];
      rec.index = base + i;
      rec.deviation = systems::Deviation{batch[i]};
      rec.lower_seed = lower_seed(problem.seed, rec.index);
      const auto instance = systems::instantiate(problem.plant, rec.deviation);
      const auto lower_result =
          lower_falsify(instance, *problem.specification, problem.lower_budget, rec.lower_seed);
      rec.gamma = lower_result.gamma;
      rec.blew_up = lower_result.blew_up;
      rec.lower_evaluations = lower_result.evaluations;
      rec.violation = rec.gamma < 0.0;
      rec.distance = distance(rec.deviation, domain, problem.p);
      rec.objective = objective(problem.mode, rec.deviation, rec.gamma, domain, problem.p);
    });

    std::vector<double> values;
    for (const auto& rec : records) values.push_back(rec.objective);
    search->tell(batch, values);

    for (auto& rec : records) {
      if (rec.violation) ++report.violations;
      report.samples.push_back(std::move(rec));
      if (improves(problem.mode, report.samples.back(), report.best()))
        report.best_index = report.samples.size() - 1;
    }
  }

  report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace stlrobust::falsifier
