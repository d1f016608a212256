#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stlrobust::stl {

/// A finite, uniformly sampled multi-channel trace. Row i holds the sample
/// taken at time i * dt; samples are stored row-major.
class Signal {
 public:
  Signal(double dt, std::vector<std::string> channels, std::vector<double> samples);

  /// Builds a signal from named columns of equal length.
  static Signal from_columns(double dt,
                             std::vector<std::pair<std::string, std::vector<double>>> columns);

  double dt() const noexcept { return dt_; }
  std::size_t length() const noexcept { return length_; }
  std::size_t width() const noexcept { return channels_.size(); }
  const std::vector<std::string>& channels() const noexcept { return channels_; }
  const std::vector<double>& data() const noexcept { return samples_; }

  std::optional<std::size_t> channel_index(std::string_view name) const;

  double at(std::size_t row, std::size_t column) const {
    return samples_[row * channels_.size() + column];
  }
  std::span<const double> row(std::size_t index) const {
    return {samples_.data() + index * channels_.size(), channels_.size()};
  }
  std::vector<double> column(std::size_t index) const;

  double time_of(std::size_t row) const noexcept { return static_cast<double>(row) * dt_; }

  friend bool operator==(const Signal&, const Signal&) = default;

 private:
  double dt_ = 0.0;
  std::vector<std::string> channels_;
  std::vector<double> samples_;
  std::size_t length_ = 0;
};

}  // namespace stlrobust::stl
