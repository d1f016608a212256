#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "stlrobust/falsifier/falsifier.hpp"

namespace stlrobust::falsifier {

std::string_view to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::AnyViolation: return "any-violation";
    case Mode::MinViolation: return "min-violation";
  }
  return "?";
}

Mode parse_mode(std::string_view text) {
  if (text == "any-violation") return Mode::AnyViolation;
  if (text == "min-violation") return Mode::MinViolation;
  throw std::invalid_argument("unknown mode '" + std::string(text) +
                              "' (expected any-violation or min-violation)");
}

std::vector<double> normalize(const systems::Deviation& delta,
                              const systems::DeviationDomain& domain) {
  domain.require(delta);
  std::vector<double> out(delta.size());
  for (std::size_t i = 0; i < delta.size(); ++i)
    out[i] = (delta[i] - domain[i].lower) / (domain[i].upper - domain[i].lower);
  return out;
}

namespace {

void check_order(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("distance order p must be >= 1");
}

}  // namespace

double distance(const systems::Deviation& delta, const systems::DeviationDomain& domain, double p) {
  check_order(p);
  const auto a = normalize(delta, domain);
  const auto b = normalize(domain.zero(), domain);
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::pow(std::abs(a[i] - b[i]), p);
  return std::pow(s, 1.0 / p);
}

double max_distance(const systems::DeviationDomain& domain, double p) {
  check_order(p);
  const double k = static_cast<double>(domain.size());
  if (std::isinf(p)) return 1.0;
  if (p == 2.0) return std::sqrt(k);
  return std::pow(k, 1.0 / p);
}

double objective(Mode mode, const systems::Deviation& delta, double gamma,
                 const systems::DeviationDomain& domain, double p) {
  if (mode == Mode::AnyViolation) return gamma;
  // A violation at the far corner and a satisfying point with gamma = 0 would
  // otherwise tie at D_max; the satisfying side starts one ulp above it.
  const double d_max = max_distance(domain, p);
  if (gamma < 0.0) return std::min(distance(delta, domain, p), d_max);
  return std::nextafter(d_max, INFINITY) + gamma;
}

}  // namespace stlrobust::falsifier
