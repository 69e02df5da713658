#pragma once

// Test-only reference implementations, deliberately naive and independent of
// the library algorithms they check.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lep/numeric.hpp"
#include "lep/poly.hpp"
#include "lep/poly_matrix.hpp"

namespace oracle {

using lep::GaussRational;
using lep::MultiPoly;
using lep::PolyMatrix;
using lep::Rational;
using lep::Vars;

inline GaussRational q(const char* s) { return GaussRational(Rational::parse(s)); }

// Laplace expansion along the first row.
inline MultiPoly cofactor_det(const PolyMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  MultiPoly total(m.vars());
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c).is_zero()) continue;
    PolyMatrix minor(n - 1, n - 1, m.vars());
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t k = 0, kk = 0; k < n; ++k)
        if (k != c) minor(r - 1, kk++) = m(r, k);
    MultiPoly term = m(0, c) * cofactor_det(minor);
    if (c % 2) total -= term;
    else total += term;
  }
  return total;
}

// sum_k C(n,k) a^k b^(n-k) by repeated multiplication.
inline MultiPoly binomial_expand(const MultiPoly& a, const MultiPoly& b, unsigned n) {
  MultiPoly total(a.vars());
  long binom = 1;
  for (unsigned k = 0; k <= n; ++k) {
    MultiPoly term = MultiPoly::constant(a.vars(), GaussRational(binom));
    for (unsigned j = 0; j < k; ++j) term = term * a;
    for (unsigned j = k; j < n; ++j) term = term * b;
    total += term;
    binom = binom * static_cast<long>(n - k) / static_cast<long>(k + 1);
  }
  return total;
}

inline GaussRational random_coeff(std::mt19937_64& rng, bool complex = true) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
  Rational re = Rational(num(rng)) / Rational(den(rng));
  Rational im = complex ? Rational(num(rng)) / Rational(den(rng)) : Rational(0);
  return {re, im};
}

inline MultiPoly random_poly(std::mt19937_64& rng, const Vars& vars, int terms, int max_deg, bool complex = true) {
  MultiPoly p(vars);
  std::uniform_int_distribution<int> deg(0, max_deg);
  for (int t = 0; t < terms; ++t) {
    lep::ExponentVec e(vars.size(), 0);
    int budget = max_deg;
    for (auto& x : e) {
      int d = std::min(deg(rng), budget);
      x = static_cast<std::uint32_t>(d);
      budget -= d;
    }
    p.add_term(e, random_coeff(rng, complex));
  }
  return p;
}

inline PolyMatrix random_matrix(std::mt19937_64& rng, const Vars& vars, std::size_t n, int max_deg) {
  PolyMatrix m(n, n, vars);
  std::uniform_int_distribution<int> terms(0, 3);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = random_poly(rng, vars, terms(rng), max_deg, false);
  return m;
}

// omega^n = eps as an eigenvalue problem: L0 is the nilpotent shift, L1 closes the cycle.
inline void companion_family(std::size_t n, lep::CMatrix& l0, lep::CMatrix& l1) {
  l0 = lep::CMatrix(n);
  l1 = lep::CMatrix(n);
  for (std::size_t k = 0; k + 1 < n; ++k) l0(k, k + 1) = 1.0;
  l1(n - 1, 0) = 1.0;
}

}  // namespace oracle
