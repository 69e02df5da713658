#include "lep/resultant.hpp"

#include <algorithm>

#include "lep/error.hpp"

namespace lep {

PolyMatrix sylvester_matrix(const MultiPoly& f, const MultiPoly& g, std::string_view var) {
  require_same_vars(f, g);
  if (f.is_zero() || g.is_zero()) throw PreconditionError("resultant of a zero polynomial");
  const int m = f.degree(var), n = g.degree(var);
  if (m == 0 && n == 0) throw PreconditionError("resultant needs positive degree in '" + std::string(var) + "'");
  auto fc = coefficients(f, var);
  auto gc = coefficients(g, var);
  const std::size_t size = static_cast<std::size_t>(m + n);
  PolyMatrix s(size, size, f.vars());
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s(r, r + k) = fc[m - k];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) s(n + r, r + k) = gc[n - k];
  return s;
}

MultiPoly sylvester_resultant(const MultiPoly& f, const MultiPoly& g, std::string_view var) {
  return det_bareiss(sylvester_matrix(f, g, var));
}

std::vector<GaussRational> univariate_coefficients(const MultiPoly& p, std::string_view var) {
  const std::size_t k = p.vars().index(var);
  std::vector<GaussRational> out(static_cast<std::size_t>(std::max(p.degree(var), 0)) + 1);
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t j = 0; j < e.size(); ++j)
      if (j != k && e[j] != 0)
        throw PreconditionError("polynomial is not univariate in '" + std::string(var) + "'");
    out[e[k]] = c;
  }
  return out;
}

MultiPoly from_univariate(const std::vector<GaussRational>& coeffs, const Vars& vars, std::string_view var) {
  const std::size_t k = vars.index(var);
  MultiPoly p(vars);
  ExponentVec e(vars.size(), 0);
  for (std::size_t d = 0; d < coeffs.size(); ++d) {
    e[k] = static_cast<std::uint32_t>(d);
    p.add_term(e, coeffs[d]);
  }
  return p;
}

namespace {

using Dense = std::vector<GaussRational>;

void trim(Dense& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// Remainder of a by b (b nonzero, trimmed).
Dense remainder(Dense a, const Dense& b) {
  trim(a);
  const GaussRational& lead = b.back();
  while (a.size() >= b.size()) {
    GaussRational q = a.back() / lead;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= q * b[k];
    a.pop_back();
    trim(a);
  }
  return a;
}

Dense make_monic(Dense p) {
  GaussRational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

Dense quotient(Dense a, const Dense& b) {
  trim(a);
  if (a.size() < b.size()) return {};
  Dense q(a.size() - b.size() + 1);
  const GaussRational& lead = b.back();
  while (a.size() >= b.size()) {
    GaussRational c = a.back() / lead;
    const std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= c * b[k];
    a.pop_back();
  }
  return q;
}

}  // namespace

MultiPoly univariate_gcd(const MultiPoly& f, const MultiPoly& g, std::string_view var) {
  require_same_vars(f, g);
  if (f.is_zero() && g.is_zero()) throw PreconditionError("gcd of two zero polynomials");
  Dense a = univariate_coefficients(f, var);
  Dense b = univariate_coefficients(g, var);
  trim(a);
  trim(b);
  while (!b.empty()) {
    Dense r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return from_univariate(make_monic(std::move(a)), f.vars(), var);
}

MultiPoly squarefree_part(const MultiPoly& p, std::string_view var) {
  if (p.is_zero()) throw PreconditionError("squarefree part of the zero polynomial");
  MultiPoly g = univariate_gcd(p, derivative(p, var), var);
  Dense pd = univariate_coefficients(p, var);
  trim(pd);
  Dense q = quotient(pd, univariate_coefficients(g, var));
  return from_univariate(make_monic(std::move(q)), p.vars(), var);
}

}  // namespace lep
