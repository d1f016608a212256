// Adaptive cruise control: ego and lead vehicles as double integrators, the
// lead driven by a piecewise-constant acceleration profile.

#include <array>
#include <cmath>

#include "plant_base.hpp"

namespace stlrobust::systems {

namespace {

constexpr std::size_t kLeadSegments = 5;

struct AccParams {
  double mass_multiplier = 1.0;
  double a_min = -1.0;
  double a_max = 1.0;
  double ego_decel_limit = -3.0;
  double ego_accel_limit = 2.0;
  double standstill_gap = 10.0;
  double time_gap = 1.4;
  double k_gap = 0.5;
  double k_speed = 1.0;
  double gap_margin = 10.0;
  double dt = 0.1;
  double horizon = 300;
  double gap_min = 50.0;
  double gap_max = 80.0;
  double v_min = 15.0;
  double v_max = 25.0;
};

using Field = detail::Field<AccParams>;
constexpr std::array kFields{
    Field{"mass_multiplier", &AccParams::mass_multiplier},
    Field{"a_min", &AccParams::a_min},
    Field{"a_max", &AccParams::a_max},
    Field{"ego_decel_limit", &AccParams::ego_decel_limit},
    Field{"ego_accel_limit", &AccParams::ego_accel_limit},
    Field{"standstill_gap", &AccParams::standstill_gap},
    Field{"time_gap", &AccParams::time_gap},
    Field{"k_gap", &AccParams::k_gap},
    Field{"k_speed", &AccParams::k_speed},
    Field{"gap_margin", &AccParams::gap_margin},
    Field{"dt", &AccParams::dt},
    Field{"horizon", &AccParams::horizon},
    Field{"gap_min", &AccParams::gap_min},
    Field{"gap_max", &AccParams::gap_max},
    Field{"v_min", &AccParams::v_min},
    Field{"v_max", &AccParams::v_max},
};

// Observation layout: d_rel, v_ego, v_lead, d_safe.
class AccSpacingController final : public Controller {
 public:
  explicit AccSpacingController(const AccParams& p)
      : k_gap_(p.k_gap), k_speed_(p.k_speed), margin_(p.gap_margin) {}

  std::unique_ptr<ControllerEpisode> start() const override {
    return std::make_unique<Episode>(*this);
  }

 private:
  struct Episode final : ControllerEpisode {
    explicit Episode(const AccSpacingController& c) : c(c) {}
    void act(std::span<const double> obs, std::span<double> input) override {
      input[0] = c.k_gap_ * (obs[0] - obs[3] - c.margin_) + c.k_speed_ * (obs[2] - obs[1]);
    }
    const AccSpacingController& c;
  };

  double k_gap_, k_speed_, margin_;
};

class Acc final : public detail::BasicPlant<AccParams> {
 public:
  Acc(const PlantOptions& options, bool with_mass)
      : BasicPlant(with_mass ? "acc3" : "acc", AccParams{}, kFields, options) {
    const auto& p = params_;
    if (!(p.dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    horizon_ = detail::steps_from(p.horizon, "horizon");

    std::vector<Dimension> dims;
    std::vector<double> zero;
    if (with_mass) {
      dims.push_back({"mass_multiplier", 0.8, 1.5});
      zero.push_back(1.0);
    }
    dims.push_back({"a_min", -3.0, -0.5});
    zero.push_back(-1.0);
    dims.push_back({"a_max", 0.5, 3.0});
    zero.push_back(1.0);
    bind_domain(detail::choose_domain(DeviationDomain(dims, zero), options, id_));

    std::vector<Dimension> scenario{
        {"gap", p.gap_min, p.gap_max}, {"v_ego", p.v_min, p.v_max}, {"v_lead", p.v_min, p.v_max}};
    for (std::size_t i = 0; i < kLeadSegments; ++i)
      scenario.push_back({"lead_accel_" + std::to_string(i), 0.0, 1.0});
    scenario_ = ScenarioSpace(std::move(scenario));
    observables_ = {"d_rel", "v_ego", "v_lead", "d_safe"};
    specification_ =
        "G[0," + util::format_number(p.dt * static_cast<double>(horizon_)) + "] (d_rel - d_safe > 0)";
    controller_ = std::make_shared<AccSpacingController>(p);
  }

  std::size_t input_size() const override { return 1; }
  double step_size() const override { return params_.dt; }
  std::size_t horizon() const override { return horizon_; }

  stl::Signal rollout(const Deviation& deviation, std::span<const double> scenario,
                      const Controller& controller) const override {
    const auto p = deviated(deviation);
    scenario_.require(scenario);
    if (!(p.mass_multiplier > 0.0)) throw std::invalid_argument("mass_multiplier must be > 0");

    double x_ego = 0.0, v_ego = scenario[1];
    double x_lead = scenario[0], v_lead = scenario[2];
    detail::Recorder rec(observables_, p.dt, horizon_);
    auto episode = controller.start();
    std::array<double, 1> u{};
    auto observe = [&](std::size_t step) {
      const std::array<double, 4> row{x_lead - x_ego, v_ego, v_lead,
                                      p.standstill_gap + p.time_gap * v_ego};
      rec.push(row, step);
      return row;
    };
    auto row = observe(0);
    const std::size_t per_segment = (horizon_ + kLeadSegments - 1) / kLeadSegments;
    for (std::size_t k = 0; k < horizon_; ++k) {
      episode->act(row, u);
      const double a_ego =
          std::clamp(u[0], p.ego_decel_limit, p.ego_accel_limit) / p.mass_multiplier;
      const double level = scenario[3 + std::min(k / per_segment, kLeadSegments - 1)];
      const double a_lead = p.a_min + level * (p.a_max - p.a_min);
      // Vehicles do not reverse.
      x_ego += p.dt * v_ego;
      x_lead += p.dt * v_lead;
      v_ego = std::max(0.0, v_ego + p.dt * a_ego);
      v_lead = std::max(0.0, v_lead + p.dt * a_lead);
      row = observe(k + 1);
    }
    return std::move(rec).finish();
  }

 private:
  std::size_t horizon_ = 0;
};

}  // namespace

PlantPtr make_acc(const PlantOptions& options, bool with_mass) {
  return std::make_shared<Acc>(options, with_mass);
}

}  // namespace stlrobust::systems
