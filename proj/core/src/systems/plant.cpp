#include "stlrobust/systems/plant.hpp"

#include "stlrobust/systems/registry.hpp"

namespace stlrobust::systems {

SimulationBlowUp::SimulationBlowUp(std::size_t step, stl::Signal partial)
    : std::runtime_error("simulation diverged at step " + std::to_string(step)),
      step_(step),
      partial_(std::move(partial)) {}

SystemInstance instantiate(PlantPtr plant, Deviation delta) {
  if (!plant) throw std::invalid_argument("instantiate: null plant");
  plant->deviation_domain().require(delta);
  SystemInstance instance;
  instance.dt = plant->step_size();
  instance.horizon = plant->horizon();
  instance.controller = plant->default_controller();
  instance.deviation = std::move(delta);
  instance.plant = std::move(plant);
  return instance;
}

SystemInstance instantiate(std::string_view plant_id, Deviation delta) {
  return instantiate(make_plant(plant_id), std::move(delta));
}

Trajectory simulate(const SystemInstance& instance, std::span<const double> scenario) {
  return Trajectory{instance.plant->rollout(instance.deviation, scenario, *instance.controller),
                    std::vector<double>(scenario.begin(), scenario.end())};
}

}  // namespace stlrobust::systems
