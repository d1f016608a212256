#include "stlrobust/optim/search_box.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stlrobust::optim {

SearchBox::SearchBox(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty()) throw std::invalid_argument("search box needs at least one dimension");
  if (lower_.size() != upper_.size())
    throw std::invalid_argument("search box bounds differ in length");
  for (std::size_t i = 0; i < lower_.size(); ++i)
    if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]) || !(lower_[i] < upper_[i]))
      throw std::invalid_argument("search box dimension " + std::to_string(i) +
                                  " needs finite lower < upper");
}

double SearchBox::mean_width() const noexcept {
  double total = 0.0;
  for (std::size_t i = 0; i < size(); ++i) total += width(i);
  return total / static_cast<double>(size());
}

Point SearchBox::center() const {
  Point c(size());
  for (std::size_t i = 0; i < size(); ++i) c[i] = 0.5 * (lower_[i] + upper_[i]);
  return c;
}

bool SearchBox::contains(std::span<const double> point) const noexcept {
  if (point.size() != size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (!(point[i] >= lower_[i] && point[i] <= upper_[i])) return false;
  return true;
}

Point SearchBox::clip(std::span<const double> point) const {
  Point out(point.begin(), point.end());
  for (std::size_t i = 0; i < size(); ++i) out[i] = std::clamp(out[i], lower_[i], upper_[i]);
  return out;
}

}  // namespace stlrobust::optim
