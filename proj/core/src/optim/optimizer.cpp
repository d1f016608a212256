#include "stlrobust/optim/optimizer.hpp"

#include <cmath>
#include <string>

#include "stlrobust/optim/cmaes.hpp"
#include "stlrobust/optim/random_search.hpp"

namespace stlrobust::optim {

std::string_view to_string(OptimizerKind kind) noexcept {
  switch (kind) {
    case OptimizerKind::Random: return "random";
    case OptimizerKind::CmaEs: return "cma-es";
  }
  return "?";
}

OptimizerKind parse_optimizer_kind(std::string_view text) {
  if (text == "random") return OptimizerKind::Random;
  if (text == "cma-es") return OptimizerKind::CmaEs;
  throw std::invalid_argument("unknown optimizer '" + std::string(text) +
                              "' (expected random or cma-es)");
}

std::size_t default_population(std::size_t dimension) noexcept {
  return 4 + static_cast<std::size_t>(std::floor(3.0 * std::log(static_cast<double>(dimension))));
}

Optimizer::Optimizer(SearchBox box, std::size_t budget) : box_(std::move(box)), budget_(budget) {
  if (budget_ == 0) throw std::invalid_argument("optimizer budget must be >= 1");
}

std::vector<Point> Optimizer::ask() {
  if (!pending_.empty()) throw std::logic_error("ask() called before tell() of the previous batch");
  if (remaining() == 0) throw BudgetExhausted("optimizer budget of " + std::to_string(budget_) +
                                              " evaluations is exhausted");
  auto batch = propose(std::min(population_size(), remaining()));
  asked_ += batch.size();
  pending_ = batch;
  return batch;
}

void Optimizer::tell(std::span<const Point> candidates, std::span<const double> values) {
  if (pending_.empty()) throw std::logic_error("tell() without a preceding ask()");
  if (candidates.size() != pending_.size() || values.size() != pending_.size())
    throw std::invalid_argument("tell() expects " + std::to_string(pending_.size()) +
                                " candidates and values");
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (candidates[i] != pending_[i])
      throw std::invalid_argument("tell() candidate " + std::to_string(i) +
                                  " differs from the asked point");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("tell() received a non-finite value");

  for (std::size_t i = 0; i < values.size(); ++i)
    if (!best_ || values[i] < best_->second) best_.emplace(candidates[i], values[i]);
  update(candidates, values);
  pending_.clear();
}

std::pair<Point, double> Optimizer::best() const {
  if (!best_) throw std::logic_error("best() before any evaluation was told");
  return *best_;
}

std::unique_ptr<Optimizer> make_optimizer(OptimizerKind kind, SearchBox box, std::uint64_t seed,
                                          std::size_t budget, const OptimizerOptions& options) {
  switch (kind) {
    case OptimizerKind::Random:
      return std::make_unique<RandomSearch>(std::move(box), seed, budget,
                                            options.population.value_or(0));
    case OptimizerKind::CmaEs: return std::make_unique<CmaEs>(std::move(box), seed, budget, options);
  }
  throw std::invalid_argument("unknown optimizer kind");
}

}  // namespace stlrobust::optim
