#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "lep/error.hpp"
#include "lep/poly_matrix.hpp"

namespace lep {

using ComplexF = std::complex<double>;

// Dense square complex matrix, row-major.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t n) : n_(n), data_(n * n) {}

  std::size_t size() const { return n_; }
  ComplexF& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const ComplexF& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

  CMatrix& operator+=(const CMatrix& o);
  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator*(ComplexF s, CMatrix m);
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

  double norm_inf() const;
  static CMatrix identity(std::size_t n);

 private:
  std::size_t n_ = 0;
  std::vector<ComplexF> data_;
};

// Matrix whose entries are all constants (parameters already substituted).
CMatrix to_numeric(const PolyMatrix& m);

class RootFindingError : public NumericalError {
 public:
  RootFindingError(const std::string& what, std::vector<ComplexF> best, double residual)
      : NumericalError(what), best_(std::move(best)), residual_(residual) {}
  const std::vector<ComplexF>& best_iterate() const { return best_; }
  double residual() const { return residual_; }

 private:
  std::vector<ComplexF> best_;
  double residual_;
};

struct AberthOptions {
  int max_sweeps = 200;
  // Relative backward error every returned root must reach.
  double tolerance = 1e-10;
  // Optional absolute uncertainty of each input coefficient (index = degree);
  // widens the numerical-multiplicity test used to polish root clusters.
  std::vector<double> coefficient_error;
};

// All complex roots of sum_k coeffs[k] x^k. Exactly-zero low coefficients
// yield exact zero roots. Root clusters that are numerically indistinguishable
// from a multiple root are replaced by their polished centre.
std::vector<ComplexF> roots_aberth(std::span<const ComplexF> coeffs, const AberthOptions& options = {});

// Relative backward error |p(z)| / sum_k |a_k| |z|^k.
double backward_error(std::span<const ComplexF> coeffs, ComplexF z);

// Coefficients (index = degree) of det(x I - A) by the Faddeev-LeVerrier recursion.
std::vector<ComplexF> faddeev_leverrier(const CMatrix& a);

// Eigenvalues as refined roots of the Faddeev-LeVerrier polynomial; n <= 32.
std::vector<ComplexF> eigenvalues(const CMatrix& a);

}  // namespace lep
