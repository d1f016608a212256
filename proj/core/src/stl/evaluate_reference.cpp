#include <algorithm>
#include <limits>
#include <string>

#include "stlrobust/stl/errors.hpp"
#include "stlrobust/stl/evaluate.hpp"

namespace stlrobust::stl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_index(const Signal& signal, std::size_t t) {
  if (t >= signal.length())
    throw HorizonError("time index " + std::to_string(t) + " is outside a signal of " +
                       std::to_string(signal.length()) + " samples");
}

double rho(const Formula& f, const Signal& s, std::size_t t) {
  require_index(s, t);
  switch (f.kind()) {
    case NodeKind::True: return kInf;
    case NodeKind::Predicate: return f.predicate().margin_at(s, t);
    case NodeKind::Not: return -rho(f.operand(), s, t);
    case NodeKind::And: return std::min(rho(f.lhs(), s, t), rho(f.rhs(), s, t));
    case NodeKind::Or: return std::max(rho(f.lhs(), s, t), rho(f.rhs(), s, t));
    case NodeKind::Always: {
      const auto w = to_steps(f.interval(), s.dt());
      double inf = kInf;
      for (auto u = t + w.first; u <= t + w.last; ++u) inf = std::min(inf, rho(f.operand(), s, u));
      return inf;
    }
    case NodeKind::Eventually: {
      const auto w = to_steps(f.interval(), s.dt());
      double sup = -kInf;
      for (auto u = t + w.first; u <= t + w.last; ++u) sup = std::max(sup, rho(f.operand(), s, u));
      return sup;
    }
    case NodeKind::Until: {
      const auto w = to_steps(f.interval(), s.dt());
      double sup = -kInf;
      for (auto t1 = t + w.first; t1 <= t + w.last; ++t1) {
        double inf = kInf;
        for (auto t2 = t; t2 <= t1; ++t2) inf = std::min(inf, rho(f.lhs(), s, t2));
        sup = std::max(sup, std::min(rho(f.rhs(), s, t1), inf));
      }
      return sup;
    }
  }
  return 0.0;
}

}  // namespace

double evaluate_reference(const Formula& formula, const Signal& signal, std::size_t t) {
  return rho(formula, signal, t);
}

}  // namespace stlrobust::stl
