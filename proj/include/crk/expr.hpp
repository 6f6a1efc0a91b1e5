#pragma once

// Tiny arithmetic language for vector-field formulas in network files.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | primary
//   primary := number | 's' index | 'a' index | func '(' expr ')' | '(' expr ')'
//   func    := sin | cos | exp | tanh

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "crk/core.hpp"

namespace crk {

enum class Func { Sin, Cos, Exp, Tanh };

struct Expr {
  enum class Kind { Number, State, Input, Neg, Add, Sub, Mul, Div, Call };

  Kind kind = Kind::Number;
  double value = 0.0;     // Number
  std::size_t index = 0;  // State, Input
  Func func = Func::Sin;  // Call
  std::vector<Expr> args;

  bool operator==(const Expr&) const = default;
};

Expr number(double v);
Expr state_var(std::size_t i);
Expr input_var(std::size_t i);

// Throws ParseError (with character offset) on syntax errors, unknown
// identifiers, and variable indices outside [0, in_dim) or [0, state_dim).
Expr parse_expression(std::string_view text, std::size_t in_dim, std::size_t state_dim);

// Throws EvalError on a zero divisor, DimensionError if a variable index is
// not covered by inputs/state.
double eval_expression(const Expr& e, const Vec& inputs, const Vec& state);

// Fully parenthesized; literals with 17 significant digits. Reparses to an
// equal tree.
std::string to_string(const Expr& e);

// Largest state / input index used plus one (0 when unused).
std::size_t state_extent(const Expr& e);
std::size_t input_extent(const Expr& e);

}  // namespace crk
