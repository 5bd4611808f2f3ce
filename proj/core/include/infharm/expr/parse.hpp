#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infharm/expr/expr.hpp"
#include "infharm/expr/quotient.hpp"

namespace infharm::expr {

/// Syntax tree shared by the real and complex expression readers.
struct Ast {
  enum class Kind { Number, Variable, Imaginary, Neg, Add, Sub, Mul, Div, Pow, Call };

  Kind kind = Kind::Number;
  Rational number;
  std::string name;  // Variable or Call
  int exponent = 0;  // Pow
  std::vector<Ast> children;
};

/// Grammar: sums and products of numbers, identifiers, calls `f(expr)`,
/// parentheses and integer powers `^k`. The identifier `i` is the imaginary unit.
Ast parse_ast(std::string_view text);

/// Resolves x1..xN (and x, y, z when nvars <= 3) to a coordinate index.
std::optional<std::size_t> resolve_coordinate(std::string_view name, std::size_t nvars);

/// Reads a real expression; division is allowed by anything nonzero and yields
/// a quotient.
Quotient parse_quotient(std::string_view text, std::size_t nvars);
/// Reads a real expression whose denominators are constants.
Expr parse_expr(std::string_view text, std::size_t nvars);

}  // namespace infharm::expr
