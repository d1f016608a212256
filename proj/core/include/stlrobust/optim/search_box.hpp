#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stlrobust::optim {

using Point = std::vector<double>;

/// Axis-aligned search region with lower < upper in every dimension.
class SearchBox {
 public:
  SearchBox(std::vector<double> lower, std::vector<double> upper);

  std::size_t size() const noexcept { return lower_.size(); }
  const std::vector<double>& lower() const noexcept { return lower_; }
  const std::vector<double>& upper() const noexcept { return upper_; }
  double width(std::size_t i) const noexcept { return upper_[i] - lower_[i]; }
  double mean_width() const noexcept;
  Point center() const;

  bool contains(std::span<const double> point) const noexcept;
  Point clip(std::span<const double> point) const;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

}  // namespace stlrobust::optim
