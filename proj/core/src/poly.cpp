#include "lep/poly.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <set>

#include "lep/error.hpp"

namespace lep {

namespace {

const std::shared_ptr<const std::vector<std::string>>& empty_names() {
  static const auto names = std::make_shared<const std::vector<std::string>>();
  return names;
}

bool valid_identifier(const std::string& s) {
  if (s.empty() || s == "i") return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

Vars::Vars() : names_(empty_names()) {}

Vars::Vars(std::vector<std::string> names) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!valid_identifier(n)) throw InputError("invalid variable name '" + n + "'");
    if (!seen.insert(n).second) throw InputError("duplicate variable name '" + n + "'");
  }
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

std::optional<std::size_t> Vars::find(std::string_view name) const {
  const auto& v = *names_;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] == name) return k;
  return std::nullopt;
}

std::size_t Vars::index(std::string_view name) const {
  if (auto k = find(name)) return *k;
  throw InputError("unknown variable '" + std::string(name) + "'");
}

std::uint64_t total_degree(const ExponentVec& e) {
  return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

bool GrlexGreater::operator()(const ExponentVec& a, const ExponentVec& b) const {
  auto da = lep::total_degree(a), db = lep::total_degree(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

void require_same_vars(const MultiPoly& a, const MultiPoly& b) {
  if (!(a.vars() == b.vars())) throw StructuralError("polynomials live over different variable lists");
}

MultiPoly MultiPoly::constant(const Vars& vars, const GaussRational& c) {
  MultiPoly p(vars);
  p.add_term(ExponentVec(vars.size(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(const Vars& vars, std::string_view name) {
  ExponentVec e(vars.size(), 0);
  e[vars.index(name)] = 1;
  return monomial(vars, std::move(e), GaussRational(1));
}

MultiPoly MultiPoly::monomial(const Vars& vars, ExponentVec exps, const GaussRational& c) {
  if (exps.size() != vars.size()) throw StructuralError("exponent vector length mismatch");
  MultiPoly p(vars);
  p.add_term(exps, c);
  return p;
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && lep::total_degree(terms_.begin()->first) == 0;
}

GaussRational MultiPoly::constant_value() const {
  if (!is_constant()) throw PreconditionError("polynomial is not constant");
  return constant_term();
}

GaussRational MultiPoly::constant_term() const {
  auto it = terms_.find(ExponentVec(vars_.size(), 0));
  return it == terms_.end() ? GaussRational() : it->second;
}

const std::pair<const ExponentVec, GaussRational>& MultiPoly::leading_term() const {
  if (terms_.empty()) throw PreconditionError("zero polynomial has no leading term");
  return *terms_.begin();
}

std::uint64_t MultiPoly::total_degree() const {
  return terms_.empty() ? 0 : lep::total_degree(terms_.begin()->first);
}

int MultiPoly::degree(std::string_view var) const {
  auto k = vars_.index(var);
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max<int>(d, static_cast<int>(e[k]));
  return d;
}

int MultiPoly::min_degree(std::string_view var) const {
  if (terms_.empty()) return -1;
  auto k = vars_.index(var);
  int d = std::numeric_limits<int>::max();
  for (const auto& [e, c] : terms_) d = std::min<int>(d, static_cast<int>(e[k]));
  return d;
}

bool MultiPoly::depends_on(std::string_view var) const {
  auto k = vars_.find(var);
  if (!k) return false;
  return std::any_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first[*k] > 0; });
}

void MultiPoly::add_term(const ExponentVec& exps, const GaussRational& c) {
  if (c.is_zero()) return;
  if (exps.size() != vars_.size()) throw StructuralError("exponent vector length mismatch");
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiPoly MultiPoly::conj() const {
  MultiPoly out(vars_);
  for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e, c.conj());
  return out;
}

std::complex<double> MultiPoly::evaluate(std::span<const std::complex<double>> point) const {
  if (point.size() != vars_.size()) throw StructuralError("evaluation point has wrong dimension");
  std::complex<double> sum = 0.0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> m = c.to_complex();
    for (std::size_t k = 0; k < e.size(); ++k)
      for (std::uint32_t r = 0; r < e[k]; ++r) m *= point[k];
    sum += m;
  }
  return sum;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out(vars_);
  for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e, -c);
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  require_same_vars(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  require_same_vars(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
  *this = *this * o;
  return *this;
}

MultiPoly& MultiPoly::operator*=(const GaussRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  require_same_vars(a, b);
  MultiPoly out(a.vars());
  if (a.is_zero() || b.is_zero()) return out;
  const std::size_t n = a.vars().size();
  ExponentVec e(n);
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      for (std::size_t k = 0; k < n; ++k) e[k] = ea[k] + eb[k];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MultiPoly poly_add(const MultiPoly& a, const MultiPoly& b) { return a + b; }
MultiPoly poly_mul(const MultiPoly& a, const MultiPoly& b) { return a * b; }

MultiPoly pow(const MultiPoly& p, unsigned exp) {
  MultiPoly result = MultiPoly::constant(p.vars(), GaussRational(1));
  MultiPoly base = p;
  while (exp) {
    if (exp & 1U) result = result * base;
    exp >>= 1U;
    if (exp) base = base * base;
  }
  return result;
}

MultiPoly substitute(const MultiPoly& p, const std::map<std::string, MultiPoly>& bindings) {
  if (bindings.empty()) return p;
  const Vars& src = p.vars();
  for (const auto& [name, val] : bindings) {
    if (!src.contains(name))
      throw InputError("cannot substitute unknown variable '" + name + "'");
  }
  const Vars target = bindings.begin()->second.vars();
  for (const auto& [name, val] : bindings)
    if (!(val.vars() == target))
      throw StructuralError("substituted polynomials must share one variable list");

  // Per source variable: either a binding (with a power cache) or a target index.
  struct Slot {
    const MultiPoly* value = nullptr;
    std::vector<MultiPoly> powers;
    std::size_t target_index = 0;
  };
  std::vector<Slot> slots(src.size());
  for (std::size_t k = 0; k < src.size(); ++k) {
    if (auto it = bindings.find(src[k]); it != bindings.end()) {
      slots[k].value = &it->second;
      slots[k].powers.push_back(MultiPoly::constant(target, GaussRational(1)));
    } else if (auto t = target.find(src[k])) {
      slots[k].target_index = *t;
    } else if (p.depends_on(src[k])) {
      throw StructuralError("variable '" + src[k] + "' is neither bound nor present in the target list");
    } else {
      slots[k].target_index = std::numeric_limits<std::size_t>::max();
    }
  }

  MultiPoly out(target);
  for (const auto& [e, c] : p.terms()) {
    ExponentVec passthrough(target.size(), 0);
    MultiPoly term = MultiPoly::constant(target, c);
    for (std::size_t k = 0; k < src.size(); ++k) {
      if (e[k] == 0) continue;
      Slot& s = slots[k];
      if (s.value) {
        while (s.powers.size() <= e[k]) s.powers.push_back(s.powers.back() * *s.value);
        term = term * s.powers[e[k]];
      } else {
        passthrough[s.target_index] += e[k];
      }
    }
    if (lep::total_degree(passthrough) > 0) term = term * MultiPoly::monomial(target, passthrough, 1);
    out += term;
  }
  return out;
}

MultiPoly substitute(const MultiPoly& p, const std::map<std::string, GaussRational>& values) {
  if (values.empty()) return p;
  const Vars& vars = p.vars();
  std::vector<const GaussRational*> bound(vars.size(), nullptr);
  for (const auto& [name, v] : values) bound[vars.index(name)] = &v;

  // Power caches keep repeated exponents cheap.
  std::vector<std::vector<GaussRational>> powers(vars.size());
  MultiPoly out(vars);
  for (const auto& [e, c] : p.terms()) {
    GaussRational coef = c;
    ExponentVec rest = e;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      if (!bound[k] || e[k] == 0) continue;
      auto& cache = powers[k];
      if (cache.empty()) cache.push_back(GaussRational(1));
      while (cache.size() <= e[k]) cache.push_back(cache.back() * *bound[k]);
      coef *= cache[e[k]];
      rest[k] = 0;
    }
    out.add_term(rest, coef);
  }
  return out;
}

std::vector<MultiPoly> coefficients(const MultiPoly& p, std::string_view var) {
  const std::size_t k = p.vars().index(var);
  int deg = p.degree(var);
  std::vector<MultiPoly> out(static_cast<std::size_t>(std::max(deg, 0)) + 1, MultiPoly(p.vars()));
  for (const auto& [e, c] : p.terms()) {
    ExponentVec rest = e;
    rest[k] = 0;
    out[e[k]].add_term(rest, c);
  }
  return out;
}

MultiPoly derivative(const MultiPoly& p, std::string_view var) {
  const std::size_t k = p.vars().index(var);
  MultiPoly out(p.vars());
  for (const auto& [e, c] : p.terms()) {
    if (e[k] == 0) continue;
    ExponentVec d = e;
    d[k] -= 1;
    out.add_term(d, c * GaussRational(static_cast<long>(e[k])));
  }
  return out;
}

MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b) {
  require_same_vars(a, b);
  if (b.is_zero()) throw std::domain_error("divide_exact: division by the zero polynomial");
  MultiPoly q(a.vars());
  if (b.is_constant()) {
    GaussRational inv = GaussRational(1) / b.constant_value();
    return a * inv;
  }
  MultiPoly r = a;
  const auto& [lb_exp, lb_coef] = b.leading_term();
  const std::size_t n = a.vars().size();
  ExponentVec e(n);
  while (!r.is_zero()) {
    const auto& [lr_exp, lr_coef] = r.leading_term();
    for (std::size_t k = 0; k < n; ++k) {
      if (lr_exp[k] < lb_exp[k]) throw StructuralError("divide_exact: division is not exact");
      e[k] = lr_exp[k] - lb_exp[k];
    }
    MultiPoly t = MultiPoly::monomial(a.vars(), e, lr_coef / lb_coef);
    q += t;
    r -= t * b;
  }
  return q;
}

MultiPoly embed(const MultiPoly& p, const Vars& target) {
  if (p.vars() == target) return p;
  const Vars& src = p.vars();
  std::vector<std::optional<std::size_t>> map(src.size());
  for (std::size_t k = 0; k < src.size(); ++k) {
    map[k] = target.find(src[k]);
    if (!map[k] && p.depends_on(src[k]))
      throw StructuralError("cannot embed: target list lacks variable '" + src[k] + "'");
  }
  MultiPoly out(target);
  for (const auto& [e, c] : p.terms()) {
    ExponentVec t(target.size(), 0);
    for (std::size_t k = 0; k < src.size(); ++k)
      if (map[k]) t[*map[k]] = e[k];
    out.add_term(t, c);
  }
  return out;
}

}  // namespace lep
