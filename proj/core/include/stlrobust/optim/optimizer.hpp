#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "stlrobust/optim/search_box.hpp"

namespace stlrobust::optim {

enum class OptimizerKind { Random, CmaEs };

std::string_view to_string(OptimizerKind kind) noexcept;
/// Accepts "random" and "cma-es". Throws std::invalid_argument otherwise.
OptimizerKind parse_optimizer_kind(std::string_view text);

class BudgetExhausted : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// 4 + floor(3 ln n), the default CMA-ES population for n dimensions.
std::size_t default_population(std::size_t dimension) noexcept;

/// Derivative-free box-constrained minimiser driven through strict
/// ask/tell alternation. Budget accounting and best-so-far tracking live
/// here; subclasses only propose points and update their search state.
class Optimizer {
 public:
  Optimizer(SearchBox box, std::size_t budget);
  virtual ~Optimizer() = default;

  Optimizer(const Optimizer&) = delete;
  Optimizer& operator=(const Optimizer&) = delete;

  virtual OptimizerKind kind() const noexcept = 0;
  virtual std::size_t population_size() const noexcept = 0;

  /// Next batch of 1..population_size() in-box candidates, never more than
  /// the remaining budget. Throws BudgetExhausted, or std::logic_error if the
  /// previous batch was not told yet.
  std::vector<Point> ask();

  /// Values for the batch returned by the last ask(), in the same order.
  /// Throws std::invalid_argument on arity mismatch or non-finite values.
  void tell(std::span<const Point> candidates, std::span<const double> values);

  /// Lowest value told so far; earlier points win ties. Throws
  /// std::logic_error before the first tell().
  std::pair<Point, double> best() const;
  bool has_best() const noexcept { return best_.has_value(); }

  const SearchBox& box() const noexcept { return box_; }
  std::size_t budget() const noexcept { return budget_; }
  std::size_t asked() const noexcept { return asked_; }
  std::size_t remaining() const noexcept { return budget_ - asked_; }
  bool awaiting_tell() const noexcept { return !pending_.empty(); }

 protected:
  virtual std::vector<Point> propose(std::size_t count) = 0;
  virtual void update(std::span<const Point> candidates, std::span<const double> values) = 0;

 private:
  SearchBox box_;
  std::size_t budget_;
  std::size_t asked_ = 0;
  std::vector<Point> pending_;
  std::optional<std::pair<Point, double>> best_;
};

struct OptimizerOptions {
  /// CMA-ES only; defaults to the box center.
  std::optional<Point> initial_mean;
  /// CMA-ES only; defaults to 0.25 * mean box width.
  std::optional<double> initial_sigma;
  /// Overrides the batch size of either optimizer.
  std::optional<std::size_t> population;
};

std::unique_ptr<Optimizer> make_optimizer(OptimizerKind kind, SearchBox box, std::uint64_t seed,
                                          std::size_t budget, const OptimizerOptions& options = {});

}  // namespace stlrobust::optim
