#include "stlrobust/stl/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "stlrobust/stl/errors.hpp"

namespace stlrobust::stl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// out[k] = min (or max) of values[k .. k + width - 1], for k < out_count.
template <typename Better>
std::vector<double> sliding_extreme(const std::vector<double>& values, std::size_t width,
                                    std::size_t out_count, Better better) {
  std::vector<double> out(out_count);
  std::deque<std::size_t> window;
  std::size_t pushed = 0;
  for (std::size_t k = 0; k < out_count; ++k) {
    const std::size_t end = k + width;
    for (; pushed < end; ++pushed) {
      while (!window.empty() && !better(values[window.back()], values[pushed])) window.pop_back();
      window.push_back(pushed);
    }
    while (window.front() < k) window.pop_front();
    out[k] = values[window.front()];
  }
  return out;
}

const auto kMin = [](double kept, double incoming) { return kept < incoming; };
const auto kMax = [](double kept, double incoming) { return kept > incoming; };

class TraceEvaluator {
 public:
  explicit TraceEvaluator(const Signal& signal) : signal_(signal) {}

  std::vector<double> node(const Formula& f, std::size_t first, std::size_t count) const {
    switch (f.kind()) {
      case NodeKind::True: return std::vector<double>(count, kInf);
      case NodeKind::Predicate: return predicate(f.predicate(), first, count);
      case NodeKind::Not: {
        auto values = node(f.operand(), first, count);
        for (auto& v : values) v = -v;
        return values;
      }
      case NodeKind::And:
      case NodeKind::Or: {
        auto lhs = node(f.lhs(), first, count);
        const auto rhs = node(f.rhs(), first, count);
        const bool conj = f.kind() == NodeKind::And;
        for (std::size_t k = 0; k < count; ++k)
          lhs[k] = conj ? std::min(lhs[k], rhs[k]) : std::max(lhs[k], rhs[k]);
        return lhs;
      }
      case NodeKind::Always:
      case NodeKind::Eventually: {
        const auto w = to_steps(f.interval(), signal_.dt());
        const auto width = w.last - w.first + 1;
        const auto child = node(f.operand(), first + w.first, count + width - 1);
        return f.kind() == NodeKind::Always ? sliding_extreme(child, width, count, kMin)
                                            : sliding_extreme(child, width, count, kMax);
      }
      case NodeKind::Until: return until(f, first, count);
    }
    return {};
  }

 private:
  std::vector<double> until(const Formula& f, std::size_t first, std::size_t count) const {
    const auto w = to_steps(f.interval(), signal_.dt());
    const auto hold = node(f.lhs(), first, count + w.last);
    const auto reach = node(f.rhs(), first + w.first, count + w.last - w.first);
    // min of hold over [t, t + a], the part every t1 in the window shares.
    const auto prefix = sliding_extreme(hold, w.first + 1, count, kMin);
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) {
      double held = prefix[k];
      double best = -kInf;
      for (std::size_t j = w.first; j <= w.last; ++j) {
        if (j > w.first) held = std::min(held, hold[k + j]);
        best = std::max(best, std::min(reach[k + j - w.first], held));
      }
      out[k] = best;
    }
    return out;
  }

  std::vector<double> expr(const Expr& e, std::size_t first, std::size_t count) const {
    using K = Expr::Kind;
    switch (e.kind()) {
      case K::Number: return std::vector<double>(count, e.value());
      case K::Channel: {
        const auto column = signal_.channel_index(e.name());
        if (!column) throw UnknownChannelError(e.name());
        std::vector<double> out(count);
        for (std::size_t k = 0; k < count; ++k) out[k] = signal_.at(first + k, *column);
        return out;
      }
      case K::Add:
      case K::Sub: {
        auto lhs = expr(e.lhs(), first, count);
        const auto rhs = expr(e.rhs(), first, count);
        const bool plus = e.kind() == K::Add;
        for (std::size_t k = 0; k < count; ++k) lhs[k] = plus ? lhs[k] + rhs[k] : lhs[k] - rhs[k];
        return lhs;
      }
      case K::Negate: {
        auto values = expr(e.operand(), first, count);
        for (auto& v : values) v = -v;
        return values;
      }
      case K::Scale: {
        auto values = expr(e.operand(), first, count);
        for (auto& v : values) v = e.value() * v;
        return values;
      }
      case K::Abs: {
        auto values = expr(e.operand(), first, count);
        for (auto& v : values) v = std::abs(v);
        return values;
      }
    }
    return {};
  }

  std::vector<double> predicate(const Predicate& p, std::size_t first, std::size_t count) const {
    auto lhs = expr(*p.lhs, first, count);
    const auto rhs = expr(*p.rhs, first, count);
    const bool greater =
        p.comparison == Comparison::Greater || p.comparison == Comparison::GreaterEqual;
    for (std::size_t k = 0; k < count; ++k) lhs[k] = greater ? lhs[k] - rhs[k] : rhs[k] - lhs[k];
    return lhs;
  }

  const Signal& signal_;
};

void check_horizon(const Formula& formula, const Signal& signal, std::size_t last_index) {
  const auto horizon = formula.horizon_steps(signal.dt());
  if (last_index >= signal.length() || horizon > signal.length() - 1 - last_index) {
    throw HorizonError("formula needs " + std::to_string(horizon) + " samples after index " +
                       std::to_string(last_index) + " but the signal has " +
                       std::to_string(signal.length()) + " samples");
  }
}

}  // namespace

std::vector<double> evaluate_trace(const Formula& formula, const Signal& signal,
                                   std::size_t first, std::size_t count) {
  if (count == 0) return {};
  check_horizon(formula, signal, first + count - 1);
  return TraceEvaluator(signal).node(formula, first, count);
}

double evaluate(const Formula& formula, const Signal& signal, std::size_t t) {
  return evaluate_trace(formula, signal, t, 1).front();
}

}  // namespace stlrobust::stl
