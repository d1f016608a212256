#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace stlrobust::stl {

class Signal;

// ---------------------------------------------------------------------------
// Predicate arithmetic
// ---------------------------------------------------------------------------

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Affine arithmetic over signal channels, extended with abs().
class Expr {
 public:
  enum class Kind { Number, Channel, Add, Sub, Negate, Scale, Abs };

  static ExprPtr number(double value);
  static ExprPtr channel(std::string name);
  static ExprPtr add(ExprPtr lhs, ExprPtr rhs);
  static ExprPtr sub(ExprPtr lhs, ExprPtr rhs);
  static ExprPtr negate(ExprPtr operand);
  /// factor * operand, factor being a literal.
  static ExprPtr scale(double factor, ExprPtr operand);
  static ExprPtr abs(ExprPtr operand);

  Kind kind() const noexcept { return kind_; }
  /// Literal value for Number, factor for Scale.
  double value() const noexcept { return value_; }
  const std::string& name() const noexcept { return name_; }
  const Expr& lhs() const { return *operands_[0]; }
  const Expr& rhs() const { return *operands_[1]; }
  const Expr& operand() const { return *operands_[0]; }

  /// Value at one row, resolving channels by name.
  double value_at(const Signal& signal, std::size_t row) const;

  /// Channel names referenced, in first-occurrence order.
  void collect_channels(std::vector<std::string>& out) const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  Expr(Kind kind, double value, std::string name, std::array<ExprPtr, 2> operands);

  Kind kind_;
  double value_ = 0.0;
  std::string name_;
  std::array<ExprPtr, 2> operands_;
};

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

enum class Comparison { Less, LessEqual, Greater, GreaterEqual };

/// `lhs CMP rhs`, read as mu > 0 with mu = lhs - rhs for > and >=, and
/// mu = rhs - lhs for < and <=. Strictness does not change the value.
struct Predicate {
  ExprPtr lhs;
  Comparison comparison = Comparison::Greater;
  ExprPtr rhs;

  double margin_at(const Signal& signal, std::size_t row) const;
};

/// Closed time interval in seconds.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Converts an interval in seconds into sample offsets with round(a/dt), round(b/dt).
struct StepWindow {
  std::size_t first;
  std::size_t last;
};
StepWindow to_steps(const Interval& interval, double dt);

enum class NodeKind { True, Predicate, Not, And, Or, Until, Eventually, Always };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable STL abstract syntax tree node. Children are shared, so subtrees
/// can be reused between formulas without copying.
class Formula {
 public:
  static FormulaPtr truth();
  static FormulaPtr predicate(ExprPtr lhs, Comparison comparison, ExprPtr rhs);
  static FormulaPtr negation(FormulaPtr operand);
  static FormulaPtr conjunction(FormulaPtr lhs, FormulaPtr rhs);
  static FormulaPtr disjunction(FormulaPtr lhs, FormulaPtr rhs);
  static FormulaPtr until(FormulaPtr lhs, Interval interval, FormulaPtr rhs);
  static FormulaPtr eventually(Interval interval, FormulaPtr operand);
  static FormulaPtr always(Interval interval, FormulaPtr operand);

  NodeKind kind() const noexcept { return kind_; }
  const Interval& interval() const noexcept { return interval_; }
  const Predicate& predicate() const noexcept { return predicate_; }

  /// Single operand of Not/Eventually/Always.
  const Formula& operand() const { return *children_[0]; }
  const Formula& lhs() const { return *children_[0]; }
  const Formula& rhs() const { return *children_[1]; }
  const FormulaPtr& child(std::size_t i) const { return children_[i]; }
  std::size_t arity() const noexcept;

  bool is_temporal() const noexcept {
    return kind_ == NodeKind::Until || kind_ == NodeKind::Eventually ||
           kind_ == NodeKind::Always;
  }

  /// Number of samples after t the evaluation at t inspects.
  std::size_t horizon_steps(double dt) const;

  std::size_t depth() const noexcept;
  std::vector<std::string> channels() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  Formula(NodeKind kind, Interval interval, Predicate predicate,
          std::array<FormulaPtr, 2> children);

  NodeKind kind_;
  Interval interval_{};
  Predicate predicate_{};
  std::array<FormulaPtr, 2> children_{};
};

/// Fully parenthesised text that parse_formula() maps back to an equal tree.
std::string to_string(const Formula& formula);
std::string to_string(const Expr& expr);

}  // namespace stlrobust::stl
