// Synthetic plant with an analytic system evaluation: the single channel is
// c = offset - delta_1 - delta_2 for every scenario.

#include <array>

#include "plant_base.hpp"

namespace stlrobust::systems {

namespace {

struct LinearSafeParams {
  double offset = 1.0;
  double delta_1 = 0.0;
  double delta_2 = 0.0;
  double dt = 1.0;
  double horizon = 1;
};

using Field = detail::Field<LinearSafeParams>;
constexpr std::array kFields{
    Field{"offset", &LinearSafeParams::offset},
    Field{"delta_1", &LinearSafeParams::delta_1},
    Field{"delta_2", &LinearSafeParams::delta_2},
    Field{"dt", &LinearSafeParams::dt},
    Field{"horizon", &LinearSafeParams::horizon},
};

class Passive final : public Controller {
 public:
  std::unique_ptr<ControllerEpisode> start() const override { return std::make_unique<Episode>(); }

 private:
  struct Episode final : ControllerEpisode {
    void act(std::span<const double>, std::span<double> input) override { input[0] = 0.0; }
  };
};

class LinearSafe final : public detail::BasicPlant<LinearSafeParams> {
 public:
  explicit LinearSafe(const PlantOptions& options)
      : BasicPlant("linear-safe", LinearSafeParams{}, kFields, options) {
    if (!(params_.dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    horizon_ = detail::steps_from(params_.horizon, "horizon");
    bind_domain(detail::choose_domain(
        DeviationDomain({{"delta_1", 0.0, 1.0}, {"delta_2", 0.0, 1.0}}, {0.0, 0.0}), options, id_));
    scenario_ = ScenarioSpace({{"unused", 0.0, 1.0}});
    observables_ = {"c"};
    specification_ = "G[0,0] (c > 0)";
    controller_ = std::make_shared<Passive>();
  }

  std::size_t input_size() const override { return 1; }
  double step_size() const override { return params_.dt; }
  std::size_t horizon() const override { return horizon_; }

  stl::Signal rollout(const Deviation& deviation, std::span<const double> scenario,
                      const Controller& controller) const override {
    const auto p = deviated(deviation);
    scenario_.require(scenario);
    const double c = p.offset - p.delta_1 - p.delta_2;
    detail::Recorder rec(observables_, params_.dt, horizon_);
    auto episode = controller.start();
    std::array<double, 1> row{c};
    std::array<double, 1> u{};
    rec.push(row, 0);
    for (std::size_t k = 0; k < horizon_; ++k) {
      episode->act(row, u);
      rec.push(row, k + 1);
    }
    return std::move(rec).finish();
  }

 private:
  std::size_t horizon_ = 0;
};

}  // namespace

PlantPtr make_linear_safe(const PlantOptions& options) {
  return std::make_shared<LinearSafe>(options);
}

}  // namespace stlrobust::systems
