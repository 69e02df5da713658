#include "lep/poly_matrix.hpp"

#include <algorithm>

#include "lep/error.hpp"

namespace lep {

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, const Vars& vars)
    : rows_(rows), cols_(cols), vars_(vars), entries_(rows * cols, MultiPoly(vars)) {
  if (rows == 0 || cols == 0) throw StructuralError("matrix dimensions must be positive");
}

PolyMatrix PolyMatrix::identity(std::size_t n, const Vars& vars) {
  PolyMatrix m(n, n, vars);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = MultiPoly::constant(vars, 1);
  return m;
}

PolyMatrix PolyMatrix::from_constants(const std::vector<std::vector<GaussRational>>& rows,
                                      const Vars& vars) {
  if (rows.empty()) throw StructuralError("matrix needs at least one row");
  PolyMatrix m(rows.size(), rows.front().size(), vars);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw StructuralError("ragged matrix rows");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = MultiPoly::constant(vars, rows[r][c]);
  }
  return m;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const MultiPoly& p) { return p.is_zero(); });
}

bool PolyMatrix::is_constant() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const MultiPoly& p) { return p.is_constant(); });
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(cols_, rows_, vars_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

PolyMatrix PolyMatrix::conj() const {
  PolyMatrix out = *this;
  for (auto& e : out.entries_) e = e.conj();
  return out;
}

PolyMatrix& PolyMatrix::operator+=(const PolyMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw StructuralError("matrix dimension mismatch in addition");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
  return *this;
}

PolyMatrix& PolyMatrix::operator-=(const PolyMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw StructuralError("matrix dimension mismatch in subtraction");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
  return *this;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows()) throw StructuralError("matrix dimension mismatch in product");
  PolyMatrix out(a.rows(), b.cols(), a.vars());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) {
      MultiPoly acc(a.vars());
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (a(r, k).is_zero() || b(k, c).is_zero()) continue;
        acc += a(r, k) * b(k, c);
      }
      out(r, c) = std::move(acc);
    }
  return out;
}

PolyMatrix operator*(const MultiPoly& s, const PolyMatrix& m) {
  PolyMatrix out = m;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero()) out(r, c) = s * m(r, c);
  return out;
}

PolyMatrix kron(const PolyMatrix& a, const PolyMatrix& b) {
  PolyMatrix out(a.rows() * b.rows(), a.cols() * b.cols(), a.vars());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      if (a(ar, ac).is_zero()) continue;
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc) {
          if (b(br, bc).is_zero()) continue;
          out(ar * b.rows() + br, ac * b.cols() + bc) = a(ar, ac) * b(br, bc);
        }
    }
  return out;
}

PolyMatrix substitute(const PolyMatrix& m, const std::map<std::string, GaussRational>& values) {
  PolyMatrix out = m;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = substitute(m(r, c), values);
  return out;
}

PolyMatrix substitute(const PolyMatrix& m, const std::map<std::string, MultiPoly>& bindings) {
  if (bindings.empty()) return m;
  const Vars& target = bindings.begin()->second.vars();
  PolyMatrix out(m.rows(), m.cols(), target);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = substitute(m(r, c), bindings);
  return out;
}

PolyMatrix derivative(const PolyMatrix& m, std::string_view var) {
  PolyMatrix out = m;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = derivative(m(r, c), var);
  return out;
}

PolyMatrix embed(const PolyMatrix& m, const Vars& target) {
  PolyMatrix out(m.rows(), m.cols(), target);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = embed(m(r, c), target);
  return out;
}

namespace {

// Pivot preference: fewer terms, then lower total degree.
bool better_pivot(const MultiPoly& a, const MultiPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.total_degree() < b.total_degree();
}

}  // namespace

MultiPoly det_bareiss(const PolyMatrix& m) {
  if (!m.is_square()) throw StructuralError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<std::vector<MultiPoly>> a(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a[r].push_back(m(r, c));

  bool negate = false;
  MultiPoly prev = MultiPoly::constant(m.vars(), 1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = n;
    for (std::size_t r = k; r < n; ++r) {
      if (a[r][k].is_zero()) continue;
      if (pivot == n || better_pivot(a[r][k], a[pivot][k])) pivot = r;
    }
    if (pivot == n) return MultiPoly(m.vars());
    if (pivot != k) {
      std::swap(a[pivot], a[k]);
      negate = !negate;
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      for (std::size_t c = k + 1; c < n; ++c) {
        MultiPoly num = a[k][k] * a[r][c];
        if (!a[r][k].is_zero() && !a[k][c].is_zero()) num -= a[r][k] * a[k][c];
        a[r][c] = divide_exact(num, prev);
      }
      a[r][k] = MultiPoly(m.vars());
    }
    prev = a[k][k];
  }
  MultiPoly det = std::move(a[n - 1][n - 1]);
  return negate ? -det : det;
}

std::size_t rank_exact(const PolyMatrix& m) {
  if (!m.is_constant()) throw PreconditionError("rank_exact needs a matrix of constants");
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<GaussRational>> a(rows, std::vector<GaussRational>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = m(r, c).constant_term();

  std::size_t rank = 0;
  GaussRational prev(1);
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t r = rank; r < rows; ++r)
      if (!a[r][c].is_zero()) {
        pivot = r;
        break;
      }
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t j = c + 1; j < cols; ++j)
        a[r][j] = (a[rank][c] * a[r][j] - a[r][c] * a[rank][j]) / prev;
      a[r][c] = GaussRational();
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

}  // namespace lep
