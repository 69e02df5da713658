#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "lep/lindblad.hpp"
#include "lep/numeric.hpp"
#include "lep/tropical.hpp"

namespace lep {

using Bindings = std::map<std::string, GaussRational>;

// The k lowest omega-coefficients of the eps-free shifted characteristic
// polynomial; their common zero puts a k-fold root at omega = 0.
struct DegeneracyConditions {
  std::vector<MultiPoly> conditions;
  int order = 0;
};

DegeneracyConditions degeneracy_conditions(const MultiPoly& charpoly, int k, std::string_view omega = kOmega);

// Res_{omega0}(c1, c0). Needs order 2 and both conditions of positive degree
// in the shift variable.
MultiPoly eliminate_shift(const DegeneracyConditions& conds, std::string_view shift = kShift);

struct ShiftRoot {
  ComplexF value;
  std::optional<GaussRational> exact;
};

struct SolvedValue {
  ComplexF value;
  // Set when a nearby rational (denominator <= 1e6) is an exact root.
  std::optional<GaussRational> exact;
  std::vector<ShiftRoot> omega0;
};

struct SolveResult {
  // The specialized resultant vanished identically: a continuum of solutions.
  bool continuum = false;
  MultiPoly specialized;
  std::vector<SolvedValue> values;
};

// Roots of the resultant in `target` once `fixed` is substituted, with the
// shift values back-solved from the gcd of the specialized conditions.
SolveResult solve_candidates(const MultiPoly& resultant, const DegeneracyConditions& conds, std::string_view target,
                             const Bindings& fixed, std::string_view shift = kShift);

// dim - rank(L - lambda I), exactly. L must be free of unbound parameters.
std::size_t geometric_multiplicity(const PolyMatrix& l, const GaussRational& lambda);

enum class EPClass { EP, Diabolic, Inconclusive };

struct EPCandidate {
  Bindings params;
  GaussRational omega0;
  EPClass classification = EPClass::Inconclusive;
  int order = 0;  // EP order when classification is EP
  std::size_t geom_mult = 0;
  int alg_mult = 0;
  bool nonphysical = false;        // some rate is negative here
  bool double_root_certified = false;  // gcd(p, dp/domega) is non-constant
  EPReport report;                 // under the generic perturbation for `seed`
  std::string note;
};

inline constexpr std::uint64_t kDefaultSeed = 42;

// params must bind every model parameter. The polygon is recomputed for
// seed, seed+1 and seed+2; any disagreement makes the result inconclusive.
EPCandidate classify(const BuiltinModel& model, const Bindings& params, const GaussRational& omega0,
                     std::uint64_t seed = kDefaultSeed);

struct UnresolvedRoot {
  ComplexF target_value;
  std::string reason;
};

struct ScanReport {
  std::string model;
  std::string target;
  Bindings fixed;
  bool continuum = false;
  MultiPoly resultant;  // specialized to `fixed`
  std::vector<EPCandidate> candidates;
  std::vector<UnresolvedRoot> unresolved;
};

// Second-order scan: conditions, elimination of the shift, roots in target,
// classification of every exact (target, omega0) pair.
ScanReport scan(const BuiltinModel& model, const std::string& target, const Bindings& fixed,
                std::uint64_t seed = kDefaultSeed);

std::string to_string(EPClass c);
nlohmann::json candidate_to_json(const EPCandidate& c);
nlohmann::json scan_to_json(const ScanReport& report);

}  // namespace lep
