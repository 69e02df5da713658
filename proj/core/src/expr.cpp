#include "lep/expr.hpp"

#include <cctype>
#include <limits>

#include "lep/error.hpp"

namespace lep {

namespace {

constexpr unsigned kMaxExponent = 4096;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprAst parse() {
    ExprAst e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static ExprAst binary(ExprAst::Kind kind, ExprAst lhs, ExprAst rhs, std::size_t offset) {
    ExprAst n;
    n.kind = kind;
    n.offset = offset;
    n.children.push_back(std::move(lhs));
    n.children.push_back(std::move(rhs));
    return n;
  }

  ExprAst expr() {
    ExprAst lhs = term();
    for (;;) {
      skip_ws();
      std::size_t at = pos_;
      if (accept('+')) {
        lhs = binary(ExprAst::Kind::Add, std::move(lhs), term(), at);
      } else if (accept('-')) {
        lhs = binary(ExprAst::Kind::Sub, std::move(lhs), term(), at);
      } else {
        return lhs;
      }
    }
  }

  ExprAst term() {
    ExprAst lhs = factor();
    for (;;) {
      skip_ws();
      std::size_t at = pos_;
      if (accept('*')) {
        lhs = binary(ExprAst::Kind::Mul, std::move(lhs), factor(), at);
      } else if (accept('/')) {
        lhs = binary(ExprAst::Kind::Div, std::move(lhs), factor(), at);
      } else {
        return lhs;
      }
    }
  }

  ExprAst factor() {
    skip_ws();
    std::size_t at = pos_;
    if (accept('-')) {
      ExprAst n;
      n.kind = ExprAst::Kind::Negate;
      n.offset = at;
      n.children.push_back(factor());
      return n;
    }
    ExprAst b = base();
    skip_ws();
    at = pos_;
    if (accept('^')) {
      skip_ws();
      std::size_t digits_at = pos_;
      std::size_t end = pos_;
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
      if (end == digits_at) fail("exponent must be a non-negative integer literal");
      if (end < text_.size() && text_[end] == '.') {
        pos_ = end;
        fail("exponent must be a non-negative integer literal");
      }
      std::string digits(text_.substr(digits_at, end - digits_at));
      if (digits.size() > 5 || std::stoul(digits) > kMaxExponent) fail("exponent too large");
      pos_ = end;
      ExprAst n;
      n.kind = ExprAst::Kind::Pow;
      n.offset = at;
      n.exponent = static_cast<unsigned>(std::stoul(digits));
      n.children.push_back(std::move(b));
      return n;
    }
    return b;
  }

  ExprAst base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const std::size_t at = pos_;
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprAst e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t end = pos_;
      bool dot = false;
      while (end < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[end])) || (text_[end] == '.' && !dot))) {
        dot = dot || text_[end] == '.';
        ++end;
      }
      std::string_view lit = text_.substr(pos_, end - pos_);
      if (lit == "." || lit.back() == '.' ) fail("malformed number");
      if (end < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[end])) || text_[end] == '_' || text_[end] == '.'))
        fail("malformed number");
      ExprAst n;
      n.kind = ExprAst::Kind::Literal;
      n.offset = at;
      n.literal = Rational::parse(lit);
      pos_ = end;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
        ++end;
      ExprAst n;
      n.offset = at;
      n.name = std::string(text_.substr(pos_, end - pos_));
      n.kind = n.name == "i" ? ExprAst::Kind::ImaginaryUnit : ExprAst::Kind::Identifier;
      pos_ = end;
      return n;
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprAst parse_ast(std::string_view text) { return Parser(text).parse(); }

MultiPoly evaluate(const ExprAst& ast, const Vars& vars) {
  using K = ExprAst::Kind;
  switch (ast.kind) {
    case K::Literal:
      return MultiPoly::constant(vars, GaussRational(ast.literal));
    case K::ImaginaryUnit:
      return MultiPoly::constant(vars, GaussRational::i());
    case K::Identifier:
      if (!vars.contains(ast.name))
        throw ParseError("unknown identifier '" + ast.name + "'", ast.offset);
      return MultiPoly::variable(vars, ast.name);
    case K::Negate:
      return -evaluate(ast.children[0], vars);
    case K::Add:
      return evaluate(ast.children[0], vars) + evaluate(ast.children[1], vars);
    case K::Sub:
      return evaluate(ast.children[0], vars) - evaluate(ast.children[1], vars);
    case K::Mul:
      return evaluate(ast.children[0], vars) * evaluate(ast.children[1], vars);
    case K::Div: {
      MultiPoly d = evaluate(ast.children[1], vars);
      if (!d.is_constant()) throw ParseError("division by a non-constant expression", ast.offset);
      if (d.is_zero()) throw ParseError("division by zero", ast.offset);
      return evaluate(ast.children[0], vars) * (GaussRational(1) / d.constant_value());
    }
    case K::Pow:
      return pow(evaluate(ast.children[0], vars), ast.exponent);
  }
  throw std::logic_error("unreachable expression kind");
}

MultiPoly parse_expr(std::string_view text, const Vars& vars) { return evaluate(parse_ast(text), vars); }

namespace {

std::string monomial_text(const ExponentVec& e, const Vars& vars) {
  std::string out;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0) continue;
    if (!out.empty()) out += '*';
    out += vars[k];
    if (e[k] > 1) out += '^' + std::to_string(e[k]);
  }
  return out;
}

std::string term_text(const GaussRational& c, const std::string& mono) {
  if (mono.empty()) return c.str();
  if (c.is_real()) {
    if (c.re() == Rational(1)) return mono;
    if (c.re() == Rational(-1)) return "-" + mono;
    return c.re().str() + "*" + mono;
  }
  if (c.re().is_zero()) return c.str() + "*" + mono;
  return "(" + c.str() + ")*" + mono;
}

}  // namespace

std::string format_poly(const MultiPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : p.terms()) {
    std::string t = term_text(c, monomial_text(e, p.vars()));
    // A bare complex constant needs parentheses once it follows another term.
    if (!out.empty() && !c.is_real() && !c.re().is_zero() && monomial_text(e, p.vars()).empty())
      t = "(" + t + ")";
    if (out.empty()) {
      out = t;
    } else if (t.front() == '-') {
      out += " - " + t.substr(1);
    } else {
      out += " + " + t;
    }
  }
  return out;
}

}  // namespace lep
