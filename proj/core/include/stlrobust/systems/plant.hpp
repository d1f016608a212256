#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stlrobust/stl/signal.hpp"
#include "stlrobust/systems/deviation.hpp"

namespace stlrobust::systems {

/// State a controller carries through one rollout (integrators, history).
class ControllerEpisode {
 public:
  virtual ~ControllerEpisode() = default;

  /// Called once per step with the newest observation; the episode sees the
  /// whole observation sequence, so history-dependent laws are expressible.
  virtual void act(std::span<const double> observation, std::span<double> input) = 0;
};

/// Deterministic feedback law. Immutable; each rollout gets a fresh episode.
class Controller {
 public:
  virtual ~Controller() = default;
  virtual std::unique_ptr<ControllerEpisode> start() const = 0;
};

/// A state coordinate went non-finite. Carries the samples recorded before
/// the failure.
class SimulationBlowUp : public std::runtime_error {
 public:
  SimulationBlowUp(std::size_t step, stl::Signal partial);

  std::size_t step() const noexcept { return step_; }
  const stl::Signal& partial() const noexcept { return partial_; }

 private:
  std::size_t step_;
  stl::Signal partial_;
};

class UnknownPlantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Overrides = std::map<std::string, double, std::less<>>;

/// A parametric plant definition S^Delta together with its shipped
/// controller and safety property. Implementations are immutable.
class Plant {
 public:
  virtual ~Plant() = default;

  virtual const std::string& id() const = 0;
  virtual const DeviationDomain& deviation_domain() const = 0;
  virtual const ScenarioSpace& scenario_space() const = 0;
  virtual const std::vector<std::string>& observables() const = 0;
  virtual std::size_t input_size() const = 0;
  virtual double step_size() const = 0;
  virtual std::size_t horizon() const = 0;
  virtual const std::string& default_specification() const = 0;
  virtual std::shared_ptr<const Controller> default_controller() const = 0;

  /// Every overridable constant with its current value.
  virtual std::vector<std::pair<std::string, double>> parameters() const = 0;

  /// Runs horizon() steps from the scenario's initial condition under the
  /// deviated dynamics. Returns horizon() + 1 samples of observables().
  virtual stl::Signal rollout(const Deviation& deviation, std::span<const double> scenario,
                              const Controller& controller) const = 0;
};

using PlantPtr = std::shared_ptr<const Plant>;

/// The deviated controlled system S^delta || C.
struct SystemInstance {
  PlantPtr plant;
  Deviation deviation;
  double dt = 0.0;
  std::size_t horizon = 0;
  std::shared_ptr<const Controller> controller;
};

struct Trajectory {
  stl::Signal signal;
  std::vector<double> scenario;
};

/// Validates delta against the plant's domain and pairs it with the shipped
/// controller. Throws DomainError.
SystemInstance instantiate(PlantPtr plant, Deviation delta);

/// Builds the plant through the registry first. Throws UnknownPlantError.
SystemInstance instantiate(std::string_view plant_id, Deviation delta);

/// Deterministic in (instance, scenario). Throws DomainError for an
/// out-of-range scenario and SimulationBlowUp on numerical divergence.
Trajectory simulate(const SystemInstance& instance, std::span<const double> scenario);

}  // namespace stlrobust::systems
