// Inverted pendulum on a cart, pushed left or right with a fixed force.

#include <array>
#include <cmath>

#include "plant_base.hpp"

namespace stlrobust::systems {

namespace {

struct CartPoleParams {
  double gravity = 9.8;
  double cart_mass = 1.0;
  double pole_mass = 0.1;
  double pole_half_length = 0.5;
  double force = 10.0;
  double dt = 0.02;
  double horizon = 400;
  double k_theta = 10.0;
  double k_theta_dot = 60.0;
  double k_x = 0.1;
  double k_x_dot = 6.0;
  double init_bound = 0.05;
  double theta_limit = 0.2095;
  double x_limit = 2.4;
};

using Field = detail::Field<CartPoleParams>;
constexpr std::array kFields{
    Field{"gravity", &CartPoleParams::gravity},
    Field{"cart_mass", &CartPoleParams::cart_mass},
    Field{"pole_mass", &CartPoleParams::pole_mass},
    Field{"pole_half_length", &CartPoleParams::pole_half_length},
    Field{"force", &CartPoleParams::force},
    Field{"dt", &CartPoleParams::dt},
    Field{"horizon", &CartPoleParams::horizon},
    Field{"k_theta", &CartPoleParams::k_theta},
    Field{"k_theta_dot", &CartPoleParams::k_theta_dot},
    Field{"k_x", &CartPoleParams::k_x},
    Field{"k_x_dot", &CartPoleParams::k_x_dot},
    Field{"init_bound", &CartPoleParams::init_bound},
    Field{"theta_limit", &CartPoleParams::theta_limit},
    Field{"x_limit", &CartPoleParams::x_limit},
};

/// PD switching law: the sign of u = k_theta*theta + k_theta_dot*theta_dot
/// + k_x*x + k_x_dot*x_dot picks the push direction.
class CartPolePd final : public Controller {
 public:
  explicit CartPolePd(const CartPoleParams& p)
      : gains_{p.k_x, p.k_x_dot, p.k_theta, p.k_theta_dot} {}

  std::unique_ptr<ControllerEpisode> start() const override {
    return std::make_unique<Episode>(gains_);
  }

 private:
  struct Episode final : ControllerEpisode {
    explicit Episode(const std::array<double, 4>& g) : gains(g) {}
    void act(std::span<const double> obs, std::span<double> input) override {
      double u = 0.0;
      for (std::size_t i = 0; i < 4; ++i) u += gains[i] * obs[i];
      input[0] = u;
    }
    std::array<double, 4> gains;
  };

  std::array<double, 4> gains_;
};

class CartPole final : public detail::BasicPlant<CartPoleParams> {
 public:
  CartPole(const PlantOptions& options, bool four)
      : BasicPlant(four ? "cartpole4" : "cartpole", CartPoleParams{}, kFields, options) {
    const auto& p = params_;
    if (!(p.dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    horizon_ = detail::steps_from(p.horizon, "horizon");

    std::vector<Dimension> dims;
    std::vector<double> zero;
    dims.push_back({"cart_mass", 0.5, 2.0});
    zero.push_back(1.0);
    if (four) {
      dims.push_back({"pole_mass", 0.05, 0.5});
      zero.push_back(0.1);
      dims.push_back({"pole_half_length", 0.25, 1.0});
      zero.push_back(0.5);
    }
    dims.push_back({"force", 5.0, 20.0});
    zero.push_back(10.0);
    bind_domain(detail::choose_domain(DeviationDomain(dims, zero), options, id_));

    const double b = p.init_bound;
    scenario_ = ScenarioSpace({{"x", -b, b}, {"x_dot", -b, b}, {"theta", -b, b}, {"theta_dot", -b, b}});
    observables_ = {"x", "x_dot", "theta", "theta_dot"};
    specification_ = "G[0," + util::format_number(p.dt * static_cast<double>(horizon_)) +
                     "] (abs(theta) < " + util::format_number(p.theta_limit) + " and abs(x) < " +
                     util::format_number(p.x_limit) + ")";
    controller_ = std::make_shared<CartPolePd>(p);
  }

  std::size_t input_size() const override { return 1; }
  double step_size() const override { return params_.dt; }
  std::size_t horizon() const override { return horizon_; }

  stl::Signal rollout(const Deviation& deviation, std::span<const double> scenario,
                      const Controller& controller) const override {
    const auto p = deviated(deviation);
    scenario_.require(scenario);

    std::array<double, 4> s{scenario[0], scenario[1], scenario[2], scenario[3]};
    const double total_mass = p.cart_mass + p.pole_mass;
    const double pole_moment = p.pole_mass * p.pole_half_length;

    detail::Recorder rec(observables_, p.dt, horizon_);
    auto episode = controller.start();
    std::array<double, 1> u{};
    rec.push(s, 0);
    for (std::size_t k = 0; k < horizon_; ++k) {
      episode->act(s, u);
      const double applied = u[0] >= 0.0 ? p.force : -p.force;
      const auto [x, x_dot, theta, theta_dot] = s;
      const double sin_t = std::sin(theta);
      const double cos_t = std::cos(theta);
      const double temp = (applied + pole_moment * theta_dot * theta_dot * sin_t) / total_mass;
      const double theta_acc =
          (p.gravity * sin_t - cos_t * temp) /
          (p.pole_half_length * (4.0 / 3.0 - p.pole_mass * cos_t * cos_t / total_mass));
      const double x_acc = temp - pole_moment * theta_acc * cos_t / total_mass;
      s = {x + p.dt * x_dot, x_dot + p.dt * x_acc, theta + p.dt * theta_dot,
           theta_dot + p.dt * theta_acc};
      rec.push(s, k + 1);
    }
    return std::move(rec).finish();
  }

 private:
  std::size_t horizon_ = 0;
};

}  // namespace

PlantPtr make_cartpole(const PlantOptions& options, bool all_four_dimensions) {
  return std::make_shared<CartPole>(options, all_four_dimensions);
}

}  // namespace stlrobust::systems
