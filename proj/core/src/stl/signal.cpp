#include "stlrobust/stl/signal.hpp"

#include <cmath>

#include "stlrobust/stl/errors.hpp"

namespace stlrobust::stl {

Signal::Signal(double dt, std::vector<std::string> channels, std::vector<double> samples)
    : dt_(dt), channels_(std::move(channels)), samples_(std::move(samples)) {
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) throw StlError("signal: sample period must be > 0");
  if (channels_.empty()) throw StlError("signal: at least one channel is required");
  if (samples_.empty()) throw StlError("signal: at least one sample is required");
  if (samples_.size() % channels_.size() != 0)
    throw StlError("signal: sample count is not a multiple of the channel count");
  length_ = samples_.size() / channels_.size();
}

Signal Signal::from_columns(double dt,
                            std::vector<std::pair<std::string, std::vector<double>>> columns) {
  if (columns.empty()) throw StlError("signal: at least one channel is required");
  const auto length = columns.front().second.size();
  std::vector<std::string> names;
  std::vector<double> samples(length * columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].second.size() != length)
      throw StlError("signal: column '" + columns[c].first + "' has a different length");
    for (std::size_t r = 0; r < length; ++r) samples[r * columns.size() + c] = columns[c].second[r];
    names.push_back(std::move(columns[c].first));
  }
  return Signal(dt, std::move(names), std::move(samples));
}

std::optional<std::size_t> Signal::channel_index(std::string_view name) const {
  for (std::size_t i = 0; i < channels_.size(); ++i)
    if (channels_[i] == name) return i;
  return std::nullopt;
}

std::vector<double> Signal::column(std::size_t index) const {
  std::vector<double> out(length_);
  for (std::size_t r = 0; r < length_; ++r) out[r] = at(r, index);
  return out;
}

}  // namespace stlrobust::stl
