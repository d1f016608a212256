#include "stlrobust/stl/parser.hpp"

#include <cctype>
#include <charconv>
#include <set>
#include <string>
#include <vector>

#include "stlrobust/stl/errors.hpp"

namespace stlrobust::stl {

namespace {

enum class Tok {
  Number,
  Ident,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Plus,
  Minus,
  Star,
  Less,
  LessEqual,
  Greater,
  GreaterEqual,
  Not,
  And,
  Or,
  True,
  Abs,
  Always,
  Eventually,
  Until,
  End,
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Number: return "number";
    case Tok::Ident: return "channel";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Less: return "'<'";
    case Tok::LessEqual: return "'<='";
    case Tok::Greater: return "'>'";
    case Tok::GreaterEqual: return "'>='";
    case Tok::Not: return "'not'";
    case Tok::And: return "'and'";
    case Tok::Or: return "'or'";
    case Tok::True: return "'true'";
    case Tok::Abs: return "'abs'";
    case Tok::Always: return "'G'";
    case Tok::Eventually: return "'F'";
    case Tok::Until: return "'U'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  double number = 0.0;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto next_non_space = [&](std::size_t from) {
    while (from < src.size() && std::isspace(static_cast<unsigned char>(src[from]))) ++from;
    return from;
  };

  while (true) {
    while (i < src.size() && std::isspace(static_cast<unsigned char>(src[i]))) advance(1);
    Token tok{Tok::End, {}, 0.0, line, col};
    if (i >= src.size()) {
      tok.text = "end of input";
      out.push_back(tok);
      return out;
    }
    const char c = src[i];
    auto single = [&](Tok kind, std::size_t len) {
      tok.kind = kind;
      tok.text = std::string(src.substr(i, len));
      advance(len);
    };

    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i;
      while (j < src.size() && (std::isdigit(static_cast<unsigned char>(src[j])) || src[j] == '.')) ++j;
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
          j = k;
        }
      }
      double value = 0.0;
      auto [end, ec] = std::from_chars(src.data() + i, src.data() + j, value);
      if (ec != std::errc{} || end != src.data() + j)
        throw ParseError(line, col, {"number"}, "'" + std::string(src.substr(i, j - i)) + "'");
      tok.kind = Tok::Number;
      tok.number = value;
      single(Tok::Number, j - i);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      const auto word = src.substr(i, j - i);
      Tok kind = Tok::Ident;
      if (word == "not") kind = Tok::Not;
      else if (word == "and") kind = Tok::And;
      else if (word == "or") kind = Tok::Or;
      else if (word == "true") kind = Tok::True;
      else if (word == "abs") kind = Tok::Abs;
      else if (word.size() == 1 && (c == 'G' || c == 'F' || c == 'U')) {
        // Temporal operators only when an interval follows; otherwise a channel.
        const auto k = next_non_space(j);
        if (k < src.size() && src[k] == '[')
          kind = c == 'G' ? Tok::Always : c == 'F' ? Tok::Eventually : Tok::Until;
      }
      single(kind, j - i);
    } else {
      const char n = i + 1 < src.size() ? src[i + 1] : '\0';
      switch (c) {
        case '(': single(Tok::LParen, 1); break;
        case ')': single(Tok::RParen, 1); break;
        case '[': single(Tok::LBracket, 1); break;
        case ']': single(Tok::RBracket, 1); break;
        case ',': single(Tok::Comma, 1); break;
        case '+': single(Tok::Plus, 1); break;
        case '-': single(Tok::Minus, 1); break;
        case '*': single(Tok::Star, 1); break;
        case '<': n == '=' ? single(Tok::LessEqual, 2) : single(Tok::Less, 1); break;
        case '>': n == '=' ? single(Tok::GreaterEqual, 2) : single(Tok::Greater, 1); break;
        default:
          throw ParseError(line, col, {"token"}, "'" + std::string(1, c) + "'");
      }
    }
    out.push_back(std::move(tok));
  }
}

// Internal control flow for backtracking; converted to ParseError at the top.
struct Mismatch {};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  FormulaPtr run() {
    try {
      auto formula = parse_or();
      expect(Tok::End);
      return formula;
    } catch (const Mismatch&) {
      const auto& at = tokens_[furthest_];
      std::vector<std::string> expected(expected_.begin(), expected_.end());
      const auto found = at.kind == Tok::End ? at.text : "'" + at.text + "'";
      throw ParseError(at.line, at.column, std::move(expected), found);
    }
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }

  bool accept(Tok kind) {
    if (peek().kind == kind) {
      ++pos_;
      return true;
    }
    note(kind);
    return false;
  }

  const Token& expect(Tok kind) {
    if (!accept(kind)) throw Mismatch{};
    return tokens_[pos_ - 1];
  }

  void note(Tok kind) { note(describe(kind)); }
  void note(const std::string& what) {
    if (pos_ > furthest_) {
      furthest_ = pos_;
      expected_.clear();
    }
    if (pos_ == furthest_) expected_.insert(what);
  }

  FormulaPtr parse_or() {
    auto lhs = parse_and();
    while (accept(Tok::Or)) lhs = Formula::disjunction(lhs, parse_and());
    return lhs;
  }

  FormulaPtr parse_and() {
    auto lhs = parse_until();
    while (accept(Tok::And)) lhs = Formula::conjunction(lhs, parse_until());
    return lhs;
  }

  FormulaPtr parse_until() {
    auto lhs = parse_unary();
    while (accept(Tok::Until)) {
      const auto interval = parse_interval();
      lhs = Formula::until(lhs, interval, parse_unary());
    }
    return lhs;
  }

  FormulaPtr parse_unary() {
    if (accept(Tok::Not)) return Formula::negation(parse_unary());
    if (accept(Tok::Always)) {
      const auto interval = parse_interval();
      return Formula::always(interval, parse_unary());
    }
    if (accept(Tok::Eventually)) {
      const auto interval = parse_interval();
      return Formula::eventually(interval, parse_unary());
    }
    return parse_atom();
  }

  FormulaPtr parse_atom() {
    if (accept(Tok::True)) return Formula::truth();
    if (peek().kind == Tok::LParen) {
      const auto saved = pos_;
      try {
        ++pos_;
        auto inner = parse_or();
        expect(Tok::RParen);
        return inner;
      } catch (const Mismatch&) {
        // Not a parenthesised formula; retry as a predicate over a
        // parenthesised expression.
        pos_ = saved;
      }
    }
    return parse_predicate();
  }

  FormulaPtr parse_predicate() {
    auto lhs = parse_expr();
    Comparison cmp;
    if (accept(Tok::Less)) cmp = Comparison::Less;
    else if (accept(Tok::LessEqual)) cmp = Comparison::LessEqual;
    else if (accept(Tok::Greater)) cmp = Comparison::Greater;
    else if (accept(Tok::GreaterEqual)) cmp = Comparison::GreaterEqual;
    else {
      note(Tok::Plus);
      note(Tok::Minus);
      throw Mismatch{};
    }
    auto rhs = parse_expr();
    return Formula::predicate(std::move(lhs), cmp, std::move(rhs));
  }

  Interval parse_interval() {
    expect(Tok::LBracket);
    const double lower = parse_signed_number();
    expect(Tok::Comma);
    const double upper = parse_signed_number();
    expect(Tok::RBracket);
    // Formula constructors reject a < 0 and a > b with IntervalError.
    return {lower, upper};
  }

  double parse_signed_number() {
    const bool negative = accept(Tok::Minus);
    const double value = expect(Tok::Number).number;
    return negative ? -value : value;
  }

  ExprPtr parse_expr() {
    auto lhs = parse_term();
    while (true) {
      if (accept(Tok::Plus)) lhs = Expr::add(lhs, parse_term());
      else if (accept(Tok::Minus)) lhs = Expr::sub(lhs, parse_term());
      else return lhs;
    }
  }

  ExprPtr parse_term() {
    auto factor = parse_factor();
    if (factor->kind() == Expr::Kind::Number && accept(Tok::Star))
      return Expr::scale(factor->value(), parse_term());
    return factor;
  }

  ExprPtr parse_factor() {
    if (peek().kind == Tok::Number) return Expr::number(tokens_[pos_++].number);
    if (peek().kind == Tok::Ident) return Expr::channel(tokens_[pos_++].text);
    if (accept(Tok::Minus)) {
      if (peek().kind == Tok::Number) return Expr::number(-tokens_[pos_++].number);
      return Expr::negate(parse_factor());
    }
    if (accept(Tok::Abs)) {
      expect(Tok::LParen);
      auto inner = parse_expr();
      expect(Tok::RParen);
      return Expr::abs(std::move(inner));
    }
    if (accept(Tok::LParen)) {
      auto inner = parse_expr();
      expect(Tok::RParen);
      return inner;
    }
    note(Tok::Number);
    note(Tok::Ident);
    throw Mismatch{};
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t furthest_ = 0;
  std::set<std::string> expected_;
};

}  // namespace

FormulaPtr parse_formula(std::string_view text) {
  return Parser(tokenize(text)).run();
}

}  // namespace stlrobust::stl
