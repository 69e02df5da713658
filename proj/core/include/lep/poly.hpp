#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lep/rational.hpp"

namespace lep {

// Conventional variable names shared by the whole pipeline.
inline constexpr std::string_view kOmega = "omega";
inline constexpr std::string_view kEps = "eps";
inline constexpr std::string_view kShift = "omega0";

// Immutable ordered list of variable names. Copies share storage; two lists
// compare equal when their names agree position by position.
class Vars {
 public:
  Vars();
  explicit Vars(std::vector<std::string> names);
  Vars(std::initializer_list<std::string> names) : Vars(std::vector<std::string>(names)) {}

  std::size_t size() const { return names_->size(); }
  const std::string& operator[](std::size_t k) const { return (*names_)[k]; }
  const std::vector<std::string>& names() const { return *names_; }

  std::optional<std::size_t> find(std::string_view name) const;
  // Throws InputError for names not in the list.
  std::size_t index(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name).has_value(); }

  friend bool operator==(const Vars& a, const Vars& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

using ExponentVec = std::vector<std::uint32_t>;

std::uint64_t total_degree(const ExponentVec& e);

// Strict "greater than" in graded-lexicographic order: higher total degree
// first, ties broken lexicographically along the variable list.
struct GrlexGreater {
  bool operator()(const ExponentVec& a, const ExponentVec& b) const;
};

// Sparse multivariate polynomial over GaussRational. Terms are kept in
// descending graded-lex order and no stored coefficient is zero.
class MultiPoly {
 public:
  using TermMap = std::map<ExponentVec, GaussRational, GrlexGreater>;

  MultiPoly() = default;
  explicit MultiPoly(Vars vars) : vars_(std::move(vars)) {}

  static MultiPoly constant(const Vars& vars, const GaussRational& c);
  static MultiPoly variable(const Vars& vars, std::string_view name);
  static MultiPoly monomial(const Vars& vars, ExponentVec exps, const GaussRational& c);

  const Vars& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Throws PreconditionError when the polynomial still depends on a variable.
  GaussRational constant_value() const;
  // Coefficient of the exponent-zero monomial.
  GaussRational constant_term() const;
  const std::pair<const ExponentVec, GaussRational>& leading_term() const;

  std::uint64_t total_degree() const;
  // -1 for the zero polynomial.
  int degree(std::string_view var) const;
  // Lowest exponent of var among the terms; -1 for the zero polynomial.
  int min_degree(std::string_view var) const;
  bool depends_on(std::string_view var) const;

  // Accumulates c * x^exps, dropping the term if it cancels.
  void add_term(const ExponentVec& exps, const GaussRational& c);

  MultiPoly conj() const;
  std::complex<double> evaluate(std::span<const std::complex<double>> point) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const GaussRational& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const GaussRational& c) { return a *= c; }
  friend MultiPoly operator*(const GaussRational& c, MultiPoly a) { return a *= c; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

 private:
  Vars vars_;
  TermMap terms_;
};

// Throws StructuralError when the variable lists differ.
void require_same_vars(const MultiPoly& a, const MultiPoly& b);

MultiPoly poly_add(const MultiPoly& a, const MultiPoly& b);
MultiPoly poly_mul(const MultiPoly& a, const MultiPoly& b);
MultiPoly pow(const MultiPoly& p, unsigned exp);

// Replaces bound variables by polynomials over a common target list. Unbound
// variables pass through and must exist in the target list.
MultiPoly substitute(const MultiPoly& p, const std::map<std::string, MultiPoly>& bindings);
// Binds variables to exact constants; the variable list is unchanged.
MultiPoly substitute(const MultiPoly& p, const std::map<std::string, GaussRational>& values);

// Entry k is the coefficient of var^k, a polynomial over the same list with
// var absent. Length is degree(var) + 1; {0} for the zero polynomial.
std::vector<MultiPoly> coefficients(const MultiPoly& p, std::string_view var);
MultiPoly derivative(const MultiPoly& p, std::string_view var);

// Quotient a / b when b divides a exactly; throws StructuralError otherwise.
MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b);

// Re-expresses p over another variable list containing every variable p uses.
MultiPoly embed(const MultiPoly& p, const Vars& target);

}  // namespace lep
