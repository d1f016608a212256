#include "stlrobust/systems/deviation.hpp"

#include <cmath>

#include "stlrobust/util/csv.hpp"

namespace stlrobust::systems {

using util::format_number;

namespace {

bool inside(const Dimension& d, double v) noexcept { return v >= d.lower && v <= d.upper; }

}  // namespace

DeviationDomain::DeviationDomain(std::vector<Dimension> dimensions, std::vector<double> zero)
    : dimensions_(std::move(dimensions)), zero_(std::move(zero)) {
  if (dimensions_.empty()) throw DomainError("deviation domain needs at least one dimension");
  if (zero_.size() != dimensions_.size())
    throw DomainError("zero-deviation point has " + std::to_string(zero_.size()) +
                      " values for " + std::to_string(dimensions_.size()) + " dimensions");
  for (std::size_t i = 0; i < dimensions_.size(); ++i) {
    const auto& d = dimensions_[i];
    if (!std::isfinite(d.lower) || !std::isfinite(d.upper) || !(d.lower < d.upper))
      throw DomainError("deviation dimension '" + d.name + "' needs lower < upper");
    if (!inside(d, zero_[i]))
      throw DomainError("zero-deviation value " + format_number(zero_[i]) + " of '" + d.name +
                        "' lies outside [" + format_number(d.lower) + ", " +
                        format_number(d.upper) + "]");
  }
}

std::vector<std::string> DeviationDomain::names() const {
  std::vector<std::string> out;
  for (const auto& d : dimensions_) out.push_back(d.name);
  return out;
}

bool DeviationDomain::contains(std::span<const double> point) const noexcept {
  if (point.size() != dimensions_.size()) return false;
  for (std::size_t i = 0; i < point.size(); ++i)
    if (!inside(dimensions_[i], point[i])) return false;
  return true;
}

void DeviationDomain::require(const Deviation& d) const {
  if (d.size() != dimensions_.size())
    throw DomainError("deviation has " + std::to_string(d.size()) + " values, domain has " +
                      std::to_string(dimensions_.size()) + " dimensions");
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!inside(dimensions_[i], d[i]))
      throw DomainError("deviation '" + dimensions_[i].name + "' = " + format_number(d[i]) +
                        " lies outside [" + format_number(dimensions_[i].lower) + ", " +
                        format_number(dimensions_[i].upper) + "]");
  }
}

ScenarioSpace::ScenarioSpace(std::vector<Dimension> dimensions)
    : dimensions_(std::move(dimensions)) {
  if (dimensions_.empty()) throw DomainError("scenario space needs at least one dimension");
  for (const auto& d : dimensions_)
    if (!std::isfinite(d.lower) || !std::isfinite(d.upper) || d.lower > d.upper)
      throw DomainError("scenario dimension '" + d.name + "' needs lower <= upper");
}

std::vector<double> ScenarioSpace::center() const {
  std::vector<double> out;
  for (const auto& d : dimensions_) out.push_back(0.5 * (d.lower + d.upper));
  return out;
}

bool ScenarioSpace::contains(std::span<const double> point) const noexcept {
  if (point.size() != dimensions_.size()) return false;
  for (std::size_t i = 0; i < point.size(); ++i)
    if (!inside(dimensions_[i], point[i])) return false;
  return true;
}

void ScenarioSpace::require(std::span<const double> point) const {
  if (point.size() != dimensions_.size())
    throw DomainError("scenario has " + std::to_string(point.size()) + " values, space has " +
                      std::to_string(dimensions_.size()) + " dimensions");
  for (std::size_t i = 0; i < point.size(); ++i)
    if (!inside(dimensions_[i], point[i]))
      throw DomainError("scenario '" + dimensions_[i].name + "' = " + format_number(point[i]) +
                        " lies outside [" + format_number(dimensions_[i].lower) + ", " +
                        format_number(dimensions_[i].upper) + "]");
}

}  // namespace stlrobust::systems
