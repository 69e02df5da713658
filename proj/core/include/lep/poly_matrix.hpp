#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lep/poly.hpp"

namespace lep {

// Dense row-major matrix of polynomials sharing one variable list.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, const Vars& vars);

  static PolyMatrix identity(std::size_t n, const Vars& vars);
  // Builds from rows of constants; every row must have the same length.
  static PolyMatrix from_constants(const std::vector<std::vector<GaussRational>>& rows,
                                   const Vars& vars);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const Vars& vars() const { return vars_; }

  MultiPoly& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const MultiPoly& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  const std::vector<MultiPoly>& entries() const { return entries_; }

  bool is_zero() const;
  bool is_constant() const;

  PolyMatrix transpose() const;
  // Conjugates coefficients; variables are treated as real.
  PolyMatrix conj() const;
  PolyMatrix adjoint() const { return conj().transpose(); }

  PolyMatrix& operator+=(const PolyMatrix& o);
  PolyMatrix& operator-=(const PolyMatrix& o);
  friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
  friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(const MultiPoly& s, const PolyMatrix& m);

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vars vars_;
  std::vector<MultiPoly> entries_;
};

PolyMatrix kron(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix substitute(const PolyMatrix& m, const std::map<std::string, GaussRational>& values);
PolyMatrix substitute(const PolyMatrix& m, const std::map<std::string, MultiPoly>& bindings);
PolyMatrix derivative(const PolyMatrix& m, std::string_view var);
PolyMatrix embed(const PolyMatrix& m, const Vars& target);

// Exact determinant by Bareiss fraction-free elimination. Pivots are chosen
// among the nonzero candidates of each column by fewest terms, then lowest
// total degree; a column with no nonzero candidate means the determinant is 0.
MultiPoly det_bareiss(const PolyMatrix& m);

// Rank of a matrix whose entries are all constants, by fraction-free
// elimination over GaussRational.
std::size_t rank_exact(const PolyMatrix& m);

}  // namespace lep
