#include "stlrobust/systems/registry.hpp"

namespace stlrobust::systems {

std::vector<std::string> plant_ids() {
  return {"cartpole", "cartpole4", "watertank", "acc", "acc3", "linear-safe"};
}

PlantPtr make_plant(std::string_view id, const PlantOptions& options) {
  if (id == "cartpole") return make_cartpole(options, false);
  if (id == "cartpole4") return make_cartpole(options, true);
  if (id == "watertank") return make_watertank(options);
  if (id == "acc") return make_acc(options, false);
  if (id == "acc3") return make_acc(options, true);
  if (id == "linear-safe") return make_linear_safe(options);
  std::string known;
  for (const auto& k : plant_ids()) known += (known.empty() ? "" : ", ") + k;
  throw UnknownPlantError("unknown plant id '" + std::string(id) + "' (known: " + known + ")");
}

std::vector<std::string> observables(std::string_view id) {
  return make_plant(id)->observables();
}

}  // namespace stlrobust::systems
