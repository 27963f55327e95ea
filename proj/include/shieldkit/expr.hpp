#pragma once

#include <memory>
#include <string>
#include <vector>

#include "shieldkit/signals.hpp"

namespace shieldkit {

// Boolean expression over named signals, used for transition guards
// and Mealy output clauses.  Grammar, loosest binding first:
//
//   or   := and ('|' and)*
//   and  := unary ('&' unary)*
//   unary:= '!' unary | 'true' | 'false' | identifier | '(' or ')'
//
// Identifiers may end in apostrophes (primed signals).
struct BoolExpr {
  enum class Kind { Const, Var, Not, And, Or };

  Kind kind = Kind::Const;
  bool value = false;  // Const
  int var = 0;         // Var: position in the signal list parsed against
  std::unique_ptr<BoolExpr> lhs, rhs;  // Not uses lhs only

  bool eval(Letter letter, int width) const;
};

// Parses `text` as an expression over `names`.  `line` and `column`
// locate the start of `text` in the enclosing file for error messages.
// Throws ParseError on syntax errors or undeclared identifiers.
BoolExpr parse_expr(const std::string& text, const std::vector<std::string>& names,
                    int line = 1, int column = 1);

// All letters over `width` signals satisfying the expression, ascending.
std::vector<Letter> satisfying_letters(const BoolExpr& expr, int width);

}  // namespace shieldkit
