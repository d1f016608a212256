#pragma once

// Shared machinery for the built-in plants. Not installed.

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stlrobust/systems/registry.hpp"
#include "stlrobust/util/csv.hpp"

namespace stlrobust::systems::detail {

template <typename Params>
struct Field {
  std::string_view name;
  double Params::*member;
};

template <typename Params>
void apply_overrides(Params& params, std::span<const Field<Params>> fields,
                     const Overrides& overrides, std::string_view plant) {
  for (const auto& [key, value] : overrides) {
    auto it = std::find_if(fields.begin(), fields.end(), [&](const auto& f) { return f.name == key; });
    if (it == fields.end()) {
      std::string known;
      for (const auto& f : fields) known += (known.empty() ? "" : ", ") + std::string(f.name);
      throw std::invalid_argument("plant '" + std::string(plant) + "' has no constant '" + key +
                                  "' (known: " + known + ")");
    }
    if (!std::isfinite(value))
      throw std::invalid_argument("override '" + key + "' must be finite");
    params.*(it->member) = value;
  }
}

inline std::size_t steps_from(double value, std::string_view name) {
  if (!(value >= 1.0) || value != std::floor(value))
    throw std::invalid_argument(std::string(name) + " must be a positive integer");
  return static_cast<std::size_t>(value);
}

/// Picks the default or overriding domain; an override must keep the names.
inline DeviationDomain choose_domain(DeviationDomain fallback, const PlantOptions& options,
                                     std::string_view plant) {
  if (!options.domain) return fallback;
  if (options.domain->names() != fallback.names()) {
    std::string expected;
    for (const auto& n : fallback.names()) expected += (expected.empty() ? "" : ", ") + n;
    throw DomainError("deviation domain of '" + std::string(plant) +
                      "' must list dimensions [" + expected + "] in this order");
  }
  return *options.domain;
}

/// Appends observation rows and aborts on non-finite state.
class Recorder {
 public:
  Recorder(const std::vector<std::string>& channels, double dt, std::size_t horizon)
      : channels_(channels), dt_(dt) {
    data_.reserve((horizon + 1) * channels.size());
  }

  void check(std::span<const double> state, std::size_t step) const {
    for (double v : state)
      if (!std::isfinite(v)) throw SimulationBlowUp(step, partial());
  }

  void push(std::span<const double> row, std::size_t step) {
    check(row, step);
    data_.insert(data_.end(), row.begin(), row.end());
  }

  stl::Signal finish() && { return stl::Signal(dt_, channels_, std::move(data_)); }

 private:
  stl::Signal partial() const {
    if (data_.empty()) return stl::Signal(dt_, channels_, std::vector<double>(channels_.size(), 0.0));
    return stl::Signal(dt_, channels_, data_);
  }

  const std::vector<std::string>& channels_;
  double dt_;
  std::vector<double> data_;
};

template <typename Params>
class BasicPlant : public Plant {
 public:
  const std::string& id() const override { return id_; }
  const DeviationDomain& deviation_domain() const override { return domain_; }
  const ScenarioSpace& scenario_space() const override { return scenario_; }
  const std::vector<std::string>& observables() const override { return observables_; }
  const std::string& default_specification() const override { return specification_; }
  std::shared_ptr<const Controller> default_controller() const override { return controller_; }

  std::vector<std::pair<std::string, double>> parameters() const override {
    std::vector<std::pair<std::string, double>> out;
    for (const auto& f : fields_) out.emplace_back(std::string(f.name), params_.*(f.member));
    return out;
  }

 protected:
  BasicPlant(std::string id, Params params, std::span<const Field<Params>> fields,
             const PlantOptions& options)
      : id_(std::move(id)), params_(std::move(params)), fields_(fields.begin(), fields.end()),
        domain_({{"_", 0.0, 1.0}}, {0.0}), scenario_({{"_", 0.0, 0.0}}) {
    apply_overrides(params_, fields, options.overrides, id_);
  }

  /// Binds deviation dimensions to constants, by name, in domain order.
  void bind_domain(DeviationDomain domain) {
    deviated_.clear();
    for (const auto& dim : domain.dimensions()) {
      auto it = std::find_if(fields_.begin(), fields_.end(),
                             [&](const auto& f) { return f.name == dim.name; });
      if (it == fields_.end()) throw DomainError("no constant named '" + dim.name + "'");
      deviated_.push_back(it->member);
    }
    domain_ = std::move(domain);
  }

  Params deviated(const Deviation& deviation) const {
    domain_.require(deviation);
    Params p = params_;
    for (std::size_t i = 0; i < deviated_.size(); ++i) p.*(deviated_[i]) = deviation[i];
    return p;
  }

  std::string id_;
  Params params_;
  std::vector<Field<Params>> fields_;
  DeviationDomain domain_;
  ScenarioSpace scenario_;
  std::vector<std::string> observables_;
  std::string specification_;
  std::shared_ptr<const Controller> controller_;
  std::vector<double Params::*> deviated_;
};

}  // namespace stlrobust::systems::detail
