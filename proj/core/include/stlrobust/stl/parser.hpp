#pragma once

#include <string_view>

#include "stlrobust/stl/formula.hpp"

namespace stlrobust::stl {

/// Parses the ASCII STL syntax:
///
///   phi  ::= phi or phi | phi and phi | phi U[a,b] phi
///          | not phi | G[a,b] phi | F[a,b] phi | true | ( phi ) | expr CMP expr
///   expr ::= number | channel | expr + expr | expr - expr | - expr
///          | number * expr | abs(expr) | ( expr )
///   CMP  ::= < | <= | > | >=
///
/// Precedence from loosest: or, and, U, then the prefix operators.
/// Throws ParseError on malformed input and IntervalError when an interval
/// has a < 0 or a > b.
FormulaPtr parse_formula(std::string_view text);

}  // namespace stlrobust::stl
