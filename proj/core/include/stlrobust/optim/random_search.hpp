#pragma once

#include <random>

#include "stlrobust/optim/optimizer.hpp"

namespace stlrobust::optim {

/// Independent uniform draws from the box; tell() only feeds bookkeeping.
class RandomSearch final : public Optimizer {
 public:
  RandomSearch(SearchBox box, std::uint64_t seed, std::size_t budget, std::size_t batch = 0);

  OptimizerKind kind() const noexcept override { return OptimizerKind::Random; }
  std::size_t population_size() const noexcept override { return batch_; }

 protected:
  std::vector<Point> propose(std::size_t count) override;
  void update(std::span<const Point>, std::span<const double>) override {}

 private:
  std::mt19937_64 rng_;
  std::size_t batch_;
};

}  // namespace stlrobust::optim
