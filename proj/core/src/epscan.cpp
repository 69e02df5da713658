#include "lep/epscan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "lep/expr.hpp"
#include "lep/resultant.hpp"

namespace lep {

namespace {

constexpr long kMaxDenominator = 1'000'000;

GaussRational rationalize(ComplexF z) {
  return {Rational::approximate(z.real(), kMaxDenominator), Rational::approximate(z.imag(), kMaxDenominator)};
}

bool vanishes_at(const MultiPoly& p, std::string_view var, const GaussRational& value) {
  return substitute(p, std::map<std::string, GaussRational>{{std::string(var), value}}).is_zero();
}

void require_only(const MultiPoly& p, std::string_view var, const char* what) {
  for (const auto& name : p.vars().names())
    if (name != var && p.depends_on(name))
      throw PreconditionError(std::string(what) + " still depends on '" + name + "'; bind it first");
}

// Numeric roots of an exact univariate polynomial, each paired with an exact
// rational root when one lies nearby.
std::vector<ShiftRoot> roots_with_exact(const MultiPoly& p, std::string_view var) {
  std::vector<ShiftRoot> out;
  if (p.is_zero() || p.degree(var) < 1) return out;
  const MultiPoly sq = squarefree_part(p, var);
  const auto exact = univariate_coefficients(sq, var);
  std::vector<ComplexF> coeffs;
  for (const auto& c : exact) coeffs.push_back(c.to_complex());
  for (const auto& z : roots_aberth(coeffs)) {
    ShiftRoot r{z, std::nullopt};
    const GaussRational q = rationalize(z);
    if (vanishes_at(sq, var, q)) r.exact = q;
    out.push_back(r);
  }
  return out;
}

bool less_complex(ComplexF a, ComplexF b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

DegeneracyConditions degeneracy_conditions(const MultiPoly& charpoly, int k, std::string_view omega) {
  const int deg = charpoly.degree(omega);
  if (k < 2 || k > deg)
    throw PreconditionError("degeneracy order " + std::to_string(k) + " outside [2, " + std::to_string(deg) + "]");
  auto coeffs = coefficients(charpoly, omega);
  DegeneracyConditions out;
  out.order = k;
  out.conditions.assign(coeffs.begin(), coeffs.begin() + k);
  return out;
}

MultiPoly eliminate_shift(const DegeneracyConditions& conds, std::string_view shift) {
  if (conds.order != 2 || conds.conditions.size() != 2)
    throw PreconditionError("shift elimination needs exactly two degeneracy conditions");
  for (const auto& c : conds.conditions)
    if (c.degree(shift) < 1)
      throw PreconditionError("a degeneracy condition does not involve the shift; solve it directly instead");
  return sylvester_resultant(conds.conditions[1], conds.conditions[0], shift);
}

SolveResult solve_candidates(const MultiPoly& resultant, const DegeneracyConditions& conds, std::string_view target,
                             const Bindings& fixed, std::string_view shift) {
  SolveResult result;
  result.specialized = substitute(resultant, fixed);
  require_only(result.specialized, target, "resultant");
  if (result.specialized.is_zero()) {
    result.continuum = true;
    return result;
  }
  if (result.specialized.degree(target) < 1) return result;

  const MultiPoly sq = squarefree_part(result.specialized, target);
  std::vector<ComplexF> coeffs;
  for (const auto& c : univariate_coefficients(sq, target)) coeffs.push_back(c.to_complex());
  auto roots = roots_aberth(coeffs);
  std::sort(roots.begin(), roots.end(), less_complex);

  for (const auto& z : roots) {
    bool duplicate = false;
    for (const auto& v : result.values) duplicate = duplicate || std::abs(v.value - z) <= 1e-9 * std::max(1.0, std::abs(z));
    if (duplicate) continue;

    SolvedValue value{z, std::nullopt, {}};
    const GaussRational q = rationalize(z);
    if (vanishes_at(sq, target, q)) {
      value.exact = q;
      Bindings at = fixed;
      at[std::string(target)] = q;
      std::vector<MultiPoly> specialized;
      for (const auto& c : conds.conditions) {
        auto s = substitute(c, at);
        require_only(s, shift, "degeneracy condition");
        if (!s.is_zero()) specialized.push_back(std::move(s));
      }
      if (!specialized.empty()) {
        MultiPoly g = specialized.front();
        for (std::size_t k = 1; k < specialized.size(); ++k) g = univariate_gcd(g, specialized[k], shift);
        value.omega0 = roots_with_exact(g, shift);
      }
    }
    result.values.push_back(std::move(value));
  }
  return result;
}

std::size_t geometric_multiplicity(const PolyMatrix& l, const GaussRational& lambda) {
  if (!l.is_square()) throw StructuralError("geometric multiplicity needs a square matrix");
  if (!l.is_constant()) throw PreconditionError("matrix still depends on unbound parameters");
  const PolyMatrix shifted = l - MultiPoly::constant(l.vars(), lambda) * PolyMatrix::identity(l.rows(), l.vars());
  return l.rows() - rank_exact(shifted);
}

EPCandidate classify(const BuiltinModel& model, const Bindings& params, const GaussRational& omega0,
                     std::uint64_t seed) {
  std::string missing;
  for (const auto& p : model.spec.params)
    if (!params.contains(p)) missing += (missing.empty() ? "" : ", ") + p;
  if (!missing.empty()) throw PreconditionError("unbound parameters: " + missing);

  EPCandidate out;
  out.params = params;
  out.omega0 = omega0;
  const PolyMatrix l = substitute(model.split.effective(), params);
  const Vars& vars = l.vars();
  const MultiPoly shift = MultiPoly::constant(vars, omega0);
  const MultiPoly p = char_poly(l, std::nullopt, shift);
  out.alg_mult = p.min_degree(kOmega);
  if (out.alg_mult < 1) throw PreconditionError("omega0 = " + omega0.str() + " is not an eigenvalue");
  out.geom_mult = geometric_multiplicity(l, omega0);
  out.double_root_certified = univariate_gcd(p, derivative(p, kOmega), kOmega).degree(kOmega) >= 1;

  for (const auto& ch : model.spec.jumps) {
    const auto rate = substitute(ch.rate, params).constant_value();
    if (rate.re().sign() < 0) out.nonphysical = true;
  }

  std::vector<EPReport> reports;
  for (std::uint64_t s = seed; s < seed + 3; ++s) {
    const PolyMatrix l1 = generic_perturbation(l.rows(), s, vars);
    reports.push_back(ep_orders(newton_polygon(char_poly(l, l1, shift))));
  }
  out.report = reports.front();
  if (out.alg_mult < 2) {
    out.note = "simple eigenvalue";
    return out;
  }
  for (const auto& r : reports)
    if (r.entries != reports.front().entries) {
      out.note = "polygons disagree between perturbation seeds";
      return out;
    }

  bool all_linear = true;
  bool any_positive = false;
  int order = 0;
  for (const auto& e : out.report.entries) {
    if (e.valuation.is_infinite() || e.valuation.value->sign() <= 0) continue;
    any_positive = true;
    const Rational& v = *e.valuation.value;
    if (v != Rational(1)) all_linear = false;
    if (v.num() == 1 && v.den() >= 2) order = std::max(order, static_cast<int>(v.den().get_si()));
  }
  const auto alg = static_cast<std::size_t>(out.alg_mult);
  if (order >= 2 && out.geom_mult < alg) {
    out.classification = EPClass::EP;
    out.order = order;
  } else if (any_positive && all_linear && out.geom_mult == alg) {
    out.classification = EPClass::Diabolic;
  } else {
    out.note = "polygon and multiplicities do not decide between EP and diabolic point";
  }
  return out;
}

ScanReport scan(const BuiltinModel& model, const std::string& target, const Bindings& fixed, std::uint64_t seed) {
  const auto& params = model.spec.params;
  if (std::find(params.begin(), params.end(), target) == params.end())
    throw InputError("unknown scan target '" + target + "'");
  std::string missing;
  for (const auto& [name, value] : fixed) {
    if (std::find(params.begin(), params.end(), name) == params.end())
      throw InputError("unknown parameter '" + name + "'");
    if (name == target) throw InputError("scan target '" + target + "' must not be bound");
  }
  for (const auto& p : params)
    if (p != target && !fixed.contains(p)) missing += (missing.empty() ? "" : ", ") + p;
  if (!missing.empty()) throw PreconditionError("unbound parameters: " + missing);

  ScanReport report;
  report.model = model.spec.name;
  report.target = target;
  report.fixed = fixed;

  // Binding first keeps the Sylvester determinant small; the leading
  // omega0-coefficients are constants, so this commutes with elimination.
  const PolyMatrix l = substitute(model.split.effective(), fixed);
  const MultiPoly shift = MultiPoly::variable(l.vars(), kShift);
  const auto conds = degeneracy_conditions(char_poly(l, std::nullopt, shift), 2);
  const auto solved = solve_candidates(eliminate_shift(conds), conds, target, {});
  report.continuum = solved.continuum;
  report.resultant = solved.specialized;

  for (const auto& v : solved.values) {
    if (!v.exact) {
      report.unresolved.push_back({v.value, "no exact rational root nearby"});
      continue;
    }
    bool any = false;
    for (const auto& w : v.omega0) {
      if (!w.exact) continue;
      Bindings at = fixed;
      at[target] = *v.exact;
      report.candidates.push_back(classify(model, at, *w.exact, seed));
      any = true;
    }
    if (!any) report.unresolved.push_back({v.value, "no exact shift value"});
  }
  return report;
}

std::string to_string(EPClass c) {
  switch (c) {
    case EPClass::EP: return "EP";
    case EPClass::Diabolic: return "diabolic";
    case EPClass::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

nlohmann::json report_json(const EPReport& r) {
  auto arr = nlohmann::json::array();
  for (const auto& e : r.entries) arr.push_back({{"valuation", e.valuation.str()}, {"multiplicity", e.multiplicity}});
  return arr;
}

std::string complex_str(ComplexF z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

}  // namespace

nlohmann::json candidate_to_json(const EPCandidate& c) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : c.params) params[k] = v.str();
  nlohmann::json j{{"params", params},
                   {"omega0", c.omega0.str()},
                   {"classification", to_string(c.classification)},
                   {"algebraic_multiplicity", c.alg_mult},
                   {"geometric_multiplicity", c.geom_mult},
                   {"nonphysical", c.nonphysical},
                   {"double_root_certified", c.double_root_certified},
                   {"polygon", report_json(c.report)}};
  if (c.classification == EPClass::EP) j["order"] = c.order;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

nlohmann::json scan_to_json(const ScanReport& report) {
  nlohmann::json fixed = nlohmann::json::object();
  for (const auto& [k, v] : report.fixed) fixed[k] = v.str();
  auto cands = nlohmann::json::array();
  for (const auto& c : report.candidates) cands.push_back(candidate_to_json(c));
  auto unresolved = nlohmann::json::array();
  for (const auto& u : report.unresolved)
    unresolved.push_back({{"value", complex_str(u.target_value)}, {"reason", u.reason}});
  return {{"schema", 1},
          {"model", report.model},
          {"target", report.target},
          {"fixed", fixed},
          {"continuum", report.continuum},
          {"resultant", format_poly(report.resultant)},
          {"candidates", cands},
          {"unresolved", unresolved}};
}

}  // namespace lep
