#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stlrobust/systems/plant.hpp"

namespace stlrobust::systems {

struct PlantOptions {
  /// Replaces named constants (physical, controller gains, dt, horizon, scenario bounds).
  Overrides overrides;
  /// Replaces the default estimated robustness range. Dimension names must
  /// equal the plant's, in order.
  std::optional<DeviationDomain> domain;
};

/// Registered ids: cartpole, cartpole4, watertank, acc, acc3, linear-safe.
std::vector<std::string> plant_ids();

/// Throws UnknownPlantError for an unregistered id, std::invalid_argument
/// for an unknown override key, DomainError for a mismatched domain.
PlantPtr make_plant(std::string_view id, const PlantOptions& options = {});

std::vector<std::string> observables(std::string_view id);

// Individual constructors, also reachable through make_plant.
PlantPtr make_cartpole(const PlantOptions& options, bool all_four_dimensions);
PlantPtr make_watertank(const PlantOptions& options);
PlantPtr make_acc(const PlantOptions& options, bool with_mass);
PlantPtr make_linear_safe(const PlantOptions& options);

}  // namespace stlrobust::systems
