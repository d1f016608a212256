#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace stlrobust::systems {

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Dimension {
  std::string name;
  double lower = 0.0;
  double upper = 0.0;

  friend bool operator==(const Dimension&, const Dimension&) = default;
};

/// A point in deviation space, one value per DeviationDomain dimension.
struct Deviation {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }

  friend bool operator==(const Deviation&, const Deviation&) = default;
};

/// The estimated robustness range: an axis-aligned box together with the
/// zero-deviation point inside it.
class DeviationDomain {
 public:
  DeviationDomain(std::vector<Dimension> dimensions, std::vector<double> zero);

  std::size_t size() const noexcept { return dimensions_.size(); }
  const std::vector<Dimension>& dimensions() const noexcept { return dimensions_; }
  const Dimension& operator[](std::size_t i) const { return dimensions_[i]; }
  Deviation zero() const { return Deviation{zero_}; }
  std::vector<std::string> names() const;

  bool contains(std::span<const double> point) const noexcept;
  bool contains(const Deviation& d) const noexcept { return contains(d.values); }
  /// Throws DomainError naming the offending dimension.
  void require(const Deviation& d) const;

  friend bool operator==(const DeviationDomain&, const DeviationDomain&) = default;

 private:
  std::vector<Dimension> dimensions_;
  std::vector<double> zero_;
};

/// Box of lower-layer search variables: initial-state coordinates and
/// exogenous-input control points. Degenerate dimensions (lower == upper)
/// are allowed.
class ScenarioSpace {
 public:
  explicit ScenarioSpace(std::vector<Dimension> dimensions);

  std::size_t size() const noexcept { return dimensions_.size(); }
  const std::vector<Dimension>& dimensions() const noexcept { return dimensions_; }
  const Dimension& operator[](std::size_t i) const { return dimensions_[i]; }
  std::vector<double> center() const;

  bool contains(std::span<const double> point) const noexcept;
  void require(std::span<const double> point) const;

 private:
  std::vector<Dimension> dimensions_;
};

}  // namespace stlrobust::systems
