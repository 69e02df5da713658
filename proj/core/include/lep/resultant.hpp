#pragma once

#include <string_view>
#include <vector>

#include "lep/poly.hpp"
#include "lep/poly_matrix.hpp"

namespace lep {

// Sylvester matrix of f (degree m in var) and g (degree n in var): n shifted
// rows of f's coefficients followed by m shifted rows of g's, leading
// coefficient first.
PolyMatrix sylvester_matrix(const MultiPoly& f, const MultiPoly& g, std::string_view var);

// det(sylvester_matrix(f, g, var)); vanishes iff f and g share a root in var.
MultiPoly sylvester_resultant(const MultiPoly& f, const MultiPoly& g, std::string_view var);

// Dense coefficient vector (index = degree) of a polynomial whose only
// variable is var. Throws PreconditionError if another variable occurs.
std::vector<GaussRational> univariate_coefficients(const MultiPoly& p, std::string_view var);
MultiPoly from_univariate(const std::vector<GaussRational>& coeffs, const Vars& vars, std::string_view var);

// Monic gcd over GaussRational of two polynomials univariate in var.
MultiPoly univariate_gcd(const MultiPoly& f, const MultiPoly& g, std::string_view var);

// Monic p / gcd(p, p'): same roots, all simple.
MultiPoly squarefree_part(const MultiPoly& p, std::string_view var);

}  // namespace lep
