#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lep/poly.hpp"

namespace lep {

// Syntax tree of the model expression language:
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := '-' factor | base ('^' uint)?
//   base   := number | 'i' | identifier | '(' expr ')'
//
// Unary minus binds looser than '^', so "-a^2" is -(a^2). Numbers are
// integer or decimal literals and are kept exact.
struct ExprAst {
  enum class Kind { Literal, ImaginaryUnit, Identifier, Negate, Add, Sub, Mul, Div, Pow };

  Kind kind = Kind::Literal;
  Rational literal;        // Literal
  std::string name;        // Identifier
  unsigned exponent = 0;   // Pow
  std::size_t offset = 0;  // byte offset of the node in the source text
  std::vector<ExprAst> children;
};

// Throws ParseError (with byte offset) on malformed input.
ExprAst parse_ast(std::string_view text);

// Folds a tree into a polynomial over vars. Throws InputError for unknown
// identifiers and for division by a non-constant or zero divisor.
MultiPoly evaluate(const ExprAst& ast, const Vars& vars);

MultiPoly parse_expr(std::string_view text, const Vars& vars);

// Canonical graded-lex rendering, e.g. "x^2 + 1" or "-1/2*gamma_e".
// parse_expr(format_poly(p), p.vars()) == p.
std::string format_poly(const MultiPoly& p);

}  // namespace lep
