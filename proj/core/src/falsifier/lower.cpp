#include <limits>
#include <memory>

#include "stlrobust/falsifier/falsifier.hpp"
#include "stlrobust/optim/cmaes.hpp"
#include "stlrobust/stl/errors.hpp"
#include "stlrobust/stl/evaluate.hpp"

namespace stlrobust::falsifier {

namespace {

// CMA-ES searches only the scenario coordinates that can vary; fixed ones
// are spliced back in before simulation.
class ScenarioMap {
 public:
  explicit ScenarioMap(const systems::ScenarioSpace& space) {
    for (std::size_t i = 0; i < space.size(); ++i) {
      base_.push_back(space[i].lower);
      if (space[i].lower < space[i].upper) {
        free_.push_back(i);
        lower_.push_back(space[i].lower);
        upper_.push_back(space[i].upper);
      }
    }
  }

  bool searchable() const noexcept { return !free_.empty(); }
  optim::SearchBox box() const { return optim::SearchBox(lower_, upper_); }

  std::vector<double> expand(const optim::Point& point) const {
    auto out = base_;
    for (std::size_t k = 0; k < free_.size(); ++k) out[free_[k]] = point[k];
    return out;
  }

  const std::vector<double>& fixed() const noexcept { return base_; }

 private:
  std::vector<double> base_;
  std::vector<std::size_t> free_;
  std::vector<double> lower_, upper_;
};

struct Best {
  double gamma = std::numeric_limits<double>::infinity();
  std::vector<double> scenario;
  std::unique_ptr<stl::Signal> trajectory;
};

}  // namespace

LowerResult lower_falsify(const systems::SystemInstance& instance, const stl::Formula& phi,
                          std::size_t budget, std::uint64_t seed) {
  if (budget == 0) throw std::invalid_argument("lower-layer budget must be >= 1");
  const auto needed = phi.horizon_steps(instance.dt);
  if (needed > instance.horizon)
    throw stl::HorizonError("specification needs " + std::to_string(needed) +
                            " steps but the instance simulates " + std::to_string(instance.horizon));

  const ScenarioMap map(instance.plant->scenario_space());
  Best best;
  std::size_t evaluations = 0;

  // Returns false once a simulation diverged.
  auto evaluate_one = [&](const std::vector<double>& scenario, double& value) {
    ++evaluations;
    try {
      auto trajectory = systems::simulate(instance, scenario);
      value = stl::evaluate(phi, trajectory.signal, 0);
      if (!best.trajectory || value < best.gamma) {
        best.gamma = value;
        best.scenario = scenario;
        best.trajectory = std::make_unique<stl::Signal>(std::move(trajectory.signal));
      }
      return true;
    } catch (const systems::SimulationBlowUp& e) {
      best.gamma = kBlowUpGamma;
      best.scenario = scenario;
      best.trajectory = std::make_unique<stl::Signal>(e.partial());
      return false;
    }
  };

  bool blew_up = false;
  if (!map.searchable()) {
    double value = 0.0;
    blew_up = !evaluate_one(map.fixed(), value);
  } else {
    optim::CmaEs search(map.box(), seed, budget);
    while (!blew_up && search.remaining() > 0) {
      const auto batch = search.ask();
      std::vector<double> values(batch.size());
      for (std::size_t i = 0; i < batch.size(); ++i) {
        if (!evaluate_one(map.expand(batch[i]), values[i])) {
          blew_up = true;
          break;
        }
      }
      if (!blew_up) search.tell(batch, values);
    }
  }

  return LowerResult{best.gamma, std::move(best.scenario), std::move(*best.trajectory),
                     evaluations, blew_up};
}

}  // namespace stlrobust::falsifier
