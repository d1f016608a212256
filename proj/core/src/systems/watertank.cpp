// Single tank with a PI(D)-controlled inlet valve and gravity outflow.

#include <array>
#include <cmath>

#include "plant_base.hpp"

namespace stlrobust::systems {

namespace {

struct WaterTankParams {
  double area = 1.0;
  double k_in = 0.25;
  double k_out = 0.2;
  double inflow_rate = 1.0;
  double outflow_rate = 1.0;
  double reference = 1.0;
  double kp = 3.0;
  double ki = 1.0;
  double kd = 0.0;
  double dt = 0.1;
  double horizon = 300;
  double level_min = 0.2;
  double level_max = 1.8;
  double band = 0.15;
  double settle_time = 10.0;
};

using Field = detail::Field<WaterTankParams>;
constexpr std::array kFields{
    Field{"area", &WaterTankParams::area},
    Field{"k_in", &WaterTankParams::k_in},
    Field{"k_out", &WaterTankParams::k_out},
    Field{"inflow_rate", &WaterTankParams::inflow_rate},
    Field{"outflow_rate", &WaterTankParams::outflow_rate},
    Field{"reference", &WaterTankParams::reference},
    Field{"kp", &WaterTankParams::kp},
    Field{"ki", &WaterTankParams::ki},
    Field{"kd", &WaterTankParams::kd},
    Field{"dt", &WaterTankParams::dt},
    Field{"horizon", &WaterTankParams::horizon},
    Field{"level_min", &WaterTankParams::level_min},
    Field{"level_max", &WaterTankParams::level_max},
    Field{"band", &WaterTankParams::band},
    Field{"settle_time", &WaterTankParams::settle_time},
};

/// PID on the level error with the valve opening saturated to [0, 1]. The
/// integrator is frozen while the output saturates in the direction of the
/// error (conditional integration).
class TankPid final : public Controller {
 public:
  explicit TankPid(const WaterTankParams& p)
      : kp_(p.kp), ki_(p.ki), kd_(p.kd), reference_(p.reference), dt_(p.dt) {}

  std::unique_ptr<ControllerEpisode> start() const override {
    return std::make_unique<Episode>(*this);
  }

 private:
  struct Episode final : ControllerEpisode {
    explicit Episode(const TankPid& c) : c(c) {}

    void act(std::span<const double> obs, std::span<double> input) override {
      const double error = c.reference_ - obs[0];
      const double derivative = first ? 0.0 : (error - previous) / c.dt_;
      first = false;
      previous = error;
      const double candidate = integral + error * c.dt_;
      const double raw = c.kp_ * error + c.ki_ * candidate + c.kd_ * derivative;
      const bool pushing_high = raw > 1.0 && error > 0.0;
      const bool pushing_low = raw < 0.0 && error < 0.0;
      if (!pushing_high && !pushing_low) integral = candidate;
      const double u = c.kp_ * error + c.ki_ * integral + c.kd_ * derivative;
      input[0] = std::clamp(u, 0.0, 1.0);
    }

    const TankPid& c;
    double integral = 0.0;
    double previous = 0.0;
    bool first = true;
  };

  double kp_, ki_, kd_, reference_, dt_;
};

class WaterTank final : public detail::BasicPlant<WaterTankParams> {
 public:
  explicit WaterTank(const PlantOptions& options)
      : BasicPlant("watertank", WaterTankParams{}, kFields, options) {
    const auto& p = params_;
    if (!(p.dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    if (!(p.area > 0.0)) throw std::invalid_argument("area must be > 0");
    horizon_ = detail::steps_from(p.horizon, "horizon");
    bind_domain(detail::choose_domain(
        DeviationDomain({{"inflow_rate", 0.5, 1.5}, {"outflow_rate", 0.5, 1.5}}, {1.0, 1.0}),
        options, id_));
    scenario_ = ScenarioSpace({{"level", p.level_min, p.level_max}});
    observables_ = {"level", "error"};
    specification_ = "G[" + util::format_number(p.settle_time) + "," +
                     util::format_number(p.dt * static_cast<double>(horizon_)) +
                     "] (abs(level - " + util::format_number(p.reference) + ") < " +
                     util::format_number(p.band) + ")";
    controller_ = std::make_shared<TankPid>(p);
  }

  std::size_t input_size() const override { return 1; }
  double step_size() const override { return params_.dt; }
  std::size_t horizon() const override { return horizon_; }

  stl::Signal rollout(const Deviation& deviation, std::span<const double> scenario,
                      const Controller& controller) const override {
    const auto p = deviated(deviation);
    scenario_.require(scenario);

    double level = scenario[0];
    detail::Recorder rec(observables_, p.dt, horizon_);
    auto episode = controller.start();
    std::array<double, 1> u{};
    auto observe = [&](std::size_t step) {
      const std::array<double, 2> row{level, std::abs(level - p.reference)};
      rec.push(row, step);
      return row;
    };
    auto row = observe(0);
    for (std::size_t k = 0; k < horizon_; ++k) {
      episode->act(row, u);
      const double inflow = p.k_in * u[0] * p.inflow_rate;
      const double outflow = p.k_out * p.outflow_rate * std::sqrt(std::max(level, 0.0));
      level = std::max(0.0, level + p.dt * (inflow - outflow) / p.area);
      row = observe(k + 1);
    }
    return std::move(rec).finish();
  }

 private:
  std::size_t horizon_ = 0;
};

}  // namespace

PlantPtr make_watertank(const PlantOptions& options) {
  return std::make_shared<WaterTank>(options);
}

}  // namespace stlrobust::systems
