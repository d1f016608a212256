#include "stlrobust/stl/formula.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stlrobust/stl/errors.hpp"
#include "stlrobust/stl/signal.hpp"
#include "stlrobust/util/csv.hpp"

namespace stlrobust::stl {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out;
}

void check_interval(const Interval& interval) {
  if (!std::isfinite(interval.lower) || !std::isfinite(interval.upper))
    throw IntervalError("interval bounds must be finite");
  if (interval.lower < 0.0)
    throw IntervalError("interval lower bound " + util::format_number(interval.lower) +
                        " is negative");
  if (interval.lower > interval.upper)
    throw IntervalError("interval [" + util::format_number(interval.lower) + "," +
                        util::format_number(interval.upper) + "] has a > b");
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected,
                       const std::string& found)
    : StlError("syntax error at " + std::to_string(line) + ":" + std::to_string(column) +
               ": found " + found + ", expected one of {" + join(expected) + "}"),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

UnknownChannelError::UnknownChannelError(std::string channel)
    : StlError("unknown channel '" + channel + "'"), channel_(std::move(channel)) {}

// ---------------------------------------------------------------------------

Expr::Expr(Kind kind, double value, std::string name, std::array<ExprPtr, 2> operands)
    : kind_(kind), value_(value), name_(std::move(name)), operands_(std::move(operands)) {}

ExprPtr Expr::number(double value) {
  return ExprPtr(new Expr(Kind::Number, value, {}, {}));
}
ExprPtr Expr::channel(std::string name) {
  return ExprPtr(new Expr(Kind::Channel, 0.0, std::move(name), {}));
}
ExprPtr Expr::add(ExprPtr lhs, ExprPtr rhs) {
  return ExprPtr(new Expr(Kind::Add, 0.0, {}, {std::move(lhs), std::move(rhs)}));
}
ExprPtr Expr::sub(ExprPtr lhs, ExprPtr rhs) {
  return ExprPtr(new Expr(Kind::Sub, 0.0, {}, {std::move(lhs), std::move(rhs)}));
}
ExprPtr Expr::negate(ExprPtr operand) {
  return ExprPtr(new Expr(Kind::Negate, 0.0, {}, {std::move(operand), nullptr}));
}
ExprPtr Expr::scale(double factor, ExprPtr operand) {
  return ExprPtr(new Expr(Kind::Scale, factor, {}, {std::move(operand), nullptr}));
}
ExprPtr Expr::abs(ExprPtr operand) {
  return ExprPtr(new Expr(Kind::Abs, 0.0, {}, {std::move(operand), nullptr}));
}

double Expr::value_at(const Signal& signal, std::size_t row) const {
  switch (kind_) {
    case Kind::Number: return value_;
    case Kind::Channel: {
      auto column = signal.channel_index(name_);
      if (!column) throw UnknownChannelError(name_);
      return signal.at(row, *column);
    }
    case Kind::Add: return lhs().value_at(signal, row) + rhs().value_at(signal, row);
    case Kind::Sub: return lhs().value_at(signal, row) - rhs().value_at(signal, row);
    case Kind::Negate: return -operand().value_at(signal, row);
    case Kind::Scale: return value_ * operand().value_at(signal, row);
    case Kind::Abs: return std::abs(operand().value_at(signal, row));
  }
  return 0.0;
}

void Expr::collect_channels(std::vector<std::string>& out) const {
  if (kind_ == Kind::Channel) {
    if (std::find(out.begin(), out.end(), name_) == out.end()) out.push_back(name_);
    return;
  }
  for (const auto& op : operands_)
    if (op) op->collect_channels(out);
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case Expr::Kind::Number: return a.value_ == b.value_;
    case Expr::Kind::Channel: return a.name_ == b.name_;
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case Expr::Kind::Scale: return a.value_ == b.value_ && a.operand() == b.operand();
    case Expr::Kind::Negate:
    case Expr::Kind::Abs: return a.operand() == b.operand();
  }
  return false;
}

double Predicate::margin_at(const Signal& signal, std::size_t row) const {
  const double l = lhs->value_at(signal, row);
  const double r = rhs->value_at(signal, row);
  switch (comparison) {
    case Comparison::Greater:
    case Comparison::GreaterEqual: return l - r;
    case Comparison::Less:
    case Comparison::LessEqual: return r - l;
  }
  return 0.0;
}

StepWindow to_steps(const Interval& interval, double dt) {
  return {static_cast<std::size_t>(std::llround(interval.lower / dt)),
          static_cast<std::size_t>(std::llround(interval.upper / dt))};
}

// ---------------------------------------------------------------------------

Formula::Formula(NodeKind kind, Interval interval, Predicate predicate,
                 std::array<FormulaPtr, 2> children)
    : kind_(kind),
      interval_(interval),
      predicate_(std::move(predicate)),
      children_(std::move(children)) {}

FormulaPtr Formula::truth() {
  static const FormulaPtr node(new Formula(NodeKind::True, {}, {}, {}));
  return node;
}

FormulaPtr Formula::predicate(ExprPtr lhs, Comparison comparison, ExprPtr rhs) {
  if (!lhs || !rhs) throw StlError("predicate: missing operand");
  return FormulaPtr(
      new Formula(NodeKind::Predicate, {}, Predicate{std::move(lhs), comparison, std::move(rhs)}, {}));
}

FormulaPtr Formula::negation(FormulaPtr operand) {
  return FormulaPtr(new Formula(NodeKind::Not, {}, {}, {std::move(operand), nullptr}));
}

FormulaPtr Formula::conjunction(FormulaPtr lhs, FormulaPtr rhs) {
  return FormulaPtr(new Formula(NodeKind::And, {}, {}, {std::move(lhs), std::move(rhs)}));
}

FormulaPtr Formula::disjunction(FormulaPtr lhs, FormulaPtr rhs) {
  return FormulaPtr(new Formula(NodeKind::Or, {}, {}, {std::move(lhs), std::move(rhs)}));
}

FormulaPtr Formula::until(FormulaPtr lhs, Interval interval, FormulaPtr rhs) {
  check_interval(interval);
  return FormulaPtr(new Formula(NodeKind::Until, interval, {}, {std::move(lhs), std::move(rhs)}));
}

FormulaPtr Formula::eventually(Interval interval, FormulaPtr operand) {
  check_interval(interval);
  return FormulaPtr(new Formula(NodeKind::Eventually, interval, {}, {std::move(operand), nullptr}));
}

FormulaPtr Formula::always(Interval interval, FormulaPtr operand) {
  check_interval(interval);
  return FormulaPtr(new Formula(NodeKind::Always, interval, {}, {std::move(operand), nullptr}));
}

std::size_t Formula::arity() const noexcept {
  switch (kind_) {
    case NodeKind::True:
    case NodeKind::Predicate: return 0;
    case NodeKind::Not:
    case NodeKind::Eventually:
    case NodeKind::Always: return 1;
    default: return 2;
  }
}

std::size_t Formula::horizon_steps(double dt) const {
  std::size_t below = 0;
  for (std::size_t i = 0; i < arity(); ++i) below = std::max(below, children_[i]->horizon_steps(dt));
  if (is_temporal()) return to_steps(interval_, dt).last + below;
  return below;
}

std::size_t Formula::depth() const noexcept {
  std::size_t below = 0;
  for (std::size_t i = 0; i < arity(); ++i) below = std::max(below, children_[i]->depth());
  return below + 1;
}

std::vector<std::string> Formula::channels() const {
  std::vector<std::string> out;
  auto walk = [&out](const Formula& node, auto&& self) -> void {
    if (node.kind() == NodeKind::Predicate) {
      node.predicate().lhs->collect_channels(out);
      node.predicate().rhs->collect_channels(out);
    }
    for (std::size_t i = 0; i < node.arity(); ++i) self(*node.child(i), self);
  };
  walk(*this, walk);
  return out;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.is_temporal() && !(a.interval_ == b.interval_)) return false;
  if (a.kind_ == NodeKind::Predicate) {
    return a.predicate_.comparison == b.predicate_.comparison &&
           *a.predicate_.lhs == *b.predicate_.lhs && *a.predicate_.rhs == *b.predicate_.rhs;
  }
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!(*a.children_[i] == *b.children_[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------

std::string to_string(const Expr& expr) {
  using K = Expr::Kind;
  switch (expr.kind()) {
    case K::Number: return util::format_number(expr.value());
    case K::Channel: return expr.name();
    case K::Add: return "(" + to_string(expr.lhs()) + " + " + to_string(expr.rhs()) + ")";
    case K::Sub: return "(" + to_string(expr.lhs()) + " - " + to_string(expr.rhs()) + ")";
    case K::Negate: return "-(" + to_string(expr.operand()) + ")";
    case K::Scale:
      return "(" + util::format_number(expr.value()) + " * " + to_string(expr.operand()) + ")";
    case K::Abs: return "abs(" + to_string(expr.operand()) + ")";
  }
  return {};
}

namespace {

const char* comparison_text(Comparison c) {
  switch (c) {
    case Comparison::Less: return "<";
    case Comparison::LessEqual: return "<=";
    case Comparison::Greater: return ">";
    case Comparison::GreaterEqual: return ">=";
  }
  return "?";
}

std::string interval_text(const Interval& interval) {
  return "[" + util::format_number(interval.lower) + "," + util::format_number(interval.upper) + "]";
}

}  // namespace

std::string to_string(const Formula& formula) {
  switch (formula.kind()) {
    case NodeKind::True: return "true";
    case NodeKind::Predicate: {
      const auto& p = formula.predicate();
      return "(" + to_string(*p.lhs) + " " + comparison_text(p.comparison) + " " +
             to_string(*p.rhs) + ")";
    }
    case NodeKind::Not: return "(not " + to_string(formula.operand()) + ")";
    case NodeKind::And:
      return "(" + to_string(formula.lhs()) + " and " + to_string(formula.rhs()) + ")";
    case NodeKind::Or:
      return "(" + to_string(formula.lhs()) + " or " + to_string(formula.rhs()) + ")";
    case NodeKind::Until:
      return "(" + to_string(formula.lhs()) + " U" + interval_text(formula.interval()) + " " +
             to_string(formula.rhs()) + ")";
    case NodeKind::Eventually:
      return "(F" + interval_text(formula.interval()) + " " + to_string(formula.operand()) + ")";
    case NodeKind::Always:
      return "(G" + interval_text(formula.interval()) + " " + to_string(formula.operand()) + ")";
  }
  return {};
}

}  // namespace stlrobust::stl
