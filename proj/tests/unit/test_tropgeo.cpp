#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "lep/expr.hpp"
#include "lep/lindblad.hpp"
#include "lep/numeric.hpp"
#include "lep/tropical.hpp"

using namespace lep;

namespace {

const Vars kV = model_vars({});
MultiPoly P(const char* s) { return parse_expr(s, kV); }
Rational R(const char* s) { return Rational::parse(s); }

std::vector<EPEntry> finite_entries(const EPReport& r) {
  std::vector<EPEntry> out;
  for (const auto& e : r.entries)
    if (!e.valuation.is_infinite()) out.push_back(e);
  return out;
}

// Finite ep_orders entries as a sorted (valuation, multiplicity) list.
std::vector<std::pair<Rational, int>> as_pairs(const std::vector<EPEntry>& es) {
  std::vector<std::pair<Rational, int>> out;
  for (const auto& e : es) out.emplace_back(*e.valuation.value, e.multiplicity);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<Rational, int>> as_pairs(const std::vector<TropicalRoot>& rs) {
  std::vector<std::pair<Rational, int>> out;
  for (const auto& r : rs) out.emplace_back(r.point, r.multiplicity);
  std::sort(out.begin(), out.end());
  return out;
}

bool hull_valid(const NewtonPolygon& poly) {
  std::optional<Rational> last;
  for (const auto& s : poly.segments) {
    if (s.vertical()) continue;
    if (last && !(*s.slope > *last)) return false;
    last = s.slope;
    for (const auto& p : poly.points) {
      // p must lie on or above the line through the segment
      Rational lhs = Rational(p.j - s.start.j) * Rational(s.end.i - s.start.i);
      Rational rhs = Rational(s.end.j - s.start.j) * Rational(p.i - s.start.i);
      if (p.i >= s.start.i && p.i <= s.end.i && lhs < rhs) return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("tropgeo") {

TEST_CASE("newton points") {
  CHECK(newton_points(P("omega^2 - eps")) == std::vector<NewtonPoint>{{0, 1}, {2, 0}});
  CHECK(newton_points(P("omega^4 + eps*omega + eps^2")) == std::vector<NewtonPoint>{{0, 2}, {1, 1}, {4, 0}});
  CHECK(newton_points(P("omega^4 + eps*omega^2")) == std::vector<NewtonPoint>{{2, 1}, {4, 0}});
  CHECK(newton_points(P("omega^2*(eps^3 + eps^2)")) == std::vector<NewtonPoint>{{2, 2}});
  CHECK_THROWS_AS(newton_points(MultiPoly(kV)), PreconditionError);
}

TEST_CASE("lower hull examples") {
  auto a = lower_hull({{2, 0}, {0, 1}});
  REQUIRE(a.segments.size() == 1);
  CHECK(*a.segments[0].slope == R("-1/2"));
  CHECK(a.segments[0].hspan == 2);

  auto b = lower_hull({{4, 0}, {1, 1}, {0, 2}});
  REQUIRE(b.segments.size() == 2);
  CHECK(*b.segments[0].slope == R("-1"));
  CHECK(b.segments[0].hspan == 1);
  CHECK(*b.segments[1].slope == R("-1/3"));
  CHECK(b.segments[1].hspan == 3);

  auto c = lower_hull({{4, 0}, {2, 1}});
  REQUIRE(c.segments.size() == 2);
  CHECK(c.segments[0].vertical());
  CHECK(c.segments[0].hspan == 0);
  CHECK(*c.segments[1].slope == R("-1/2"));
  CHECK(c.segments[1].hspan == 2);

  // collinear points merge into one segment
  auto d = lower_hull({{0, 2}, {1, 1}, {2, 0}});
  REQUIRE(d.segments.size() == 1);
  CHECK(d.segments[0].hspan == 2);
}

TEST_CASE("ep orders") {
  auto a = ep_orders(lower_hull({{2, 0}, {0, 1}}));
  CHECK(a.entries == std::vector<EPEntry>{{Valuation::finite(R("1/2")), 2}});
  auto b = ep_orders(lower_hull({{4, 0}, {1, 1}, {0, 2}}));
  CHECK(b.entries == std::vector<EPEntry>{{Valuation::finite(R("1")), 1}, {Valuation::finite(R("1/3")), 3}});
  auto c = ep_orders(lower_hull({{4, 0}, {2, 1}}));
  CHECK(c.entries == std::vector<EPEntry>{{Valuation::infinity(), 2}, {Valuation::finite(R("1/2")), 2}});
  CHECK(c.total_multiplicity() == 4);
}

TEST_CASE("tropicalization and tropical roots") {
  auto t = tropicalize(P("omega^2 + eps"));
  CHECK(t(R("0")) == R("0"));
  CHECK(t(R("1")) == R("1"));
  CHECK(as_pairs(tropical_roots(t)) == std::vector<std::pair<Rational, int>>{{R("1/2"), 2}});
  CHECK(as_pairs(tropical_roots(tropicalize(P("omega^4 + eps*omega + eps^2")))) ==
        std::vector<std::pair<Rational, int>>{{R("1/3"), 3}, {R("1"), 1}});
  CHECK(as_pairs(tropical_roots(tropicalize(P("omega + 1")))) == std::vector<std::pair<Rational, int>>{{R("0"), 1}});
  CHECK_THROWS(tropical_roots(tropicalize(P("omega^3"))));
}

TEST_CASE("tentacle directions") {
  auto a = tentacle_directions(lower_hull({{2, 0}, {0, 1}}));
  REQUIRE(a.size() == 1);
  CHECK(a[0].kind == TentacleKind::Sloped);
  CHECK(a[0].slope == R("2"));
  auto b = tentacle_directions(lower_hull({{4, 0}, {1, 1}, {0, 2}}));
  REQUIRE(b.size() == 2);
  CHECK(b[0].slope == R("1"));
  CHECK(b[1].slope == R("3"));
  auto c = tentacle_directions(lower_hull({{4, 0}, {2, 1}}));
  REQUIRE(c.size() == 2);
  CHECK(c[0].kind == TentacleKind::Horizontal);
  CHECK(c[1].slope == R("2"));
  auto d = tentacle_directions(lower_hull({{0, 0}, {2, 0}}));
  REQUIRE(d.size() == 1);
  CHECK(d[0].kind == TentacleKind::Vertical);
}

TEST_CASE("omega^n - eps^k oracle") {
  for (int n = 1; n <= 6; ++n)
    for (int k = 1; k <= 6; ++k) {
      if (std::gcd(n, k) != 1) continue;
      MultiPoly f = pow(MultiPoly::variable(kV, kOmega), static_cast<unsigned>(n)) -
                    pow(MultiPoly::variable(kV, kEps), static_cast<unsigned>(k));
      auto r = ep_orders(newton_polygon(f));
      CHECK(r.entries == std::vector<EPEntry>{{Valuation::finite(Rational(k) / Rational(n)), n}});
    }
}

TEST_CASE("tropical roots agree with ep orders on random polynomials") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> deg(1, 7), edeg(0, 6), nterms(2, 8), coin(0, 3);
  for (int t = 0; t < 200; ++t) {
    MultiPoly f(kV);
    const int n = deg(rng);
    f.add_term({0, static_cast<std::uint32_t>(edeg(rng)), static_cast<std::uint32_t>(n)}, oracle::random_coeff(rng) + 7);
    for (int k = nterms(rng); k > 0; --k) {
      std::uniform_int_distribution<int> i(0, n);
      f.add_term({0, static_cast<std::uint32_t>(edeg(rng)), static_cast<std::uint32_t>(i(rng))}, oracle::random_coeff(rng));
    }
    if (f.degree(kOmega) < 1) continue;
    auto poly = newton_polygon(f);
    auto report = ep_orders(poly);
    CHECK(report.total_multiplicity() == f.degree(kOmega));
    CHECK(hull_valid(poly));
    auto trop = tropicalize(f);
    if (trop.pieces.size() < 2) continue;
    CHECK(as_pairs(tropical_roots(trop)) == as_pairs(finite_entries(report)));
  }
}

TEST_CASE("puiseux consistency of numeric roots") {
  // (omega^2 - eps)(omega - eps)(omega - 2): valuations 1/2 (x2), 1, 0
  MultiPoly f = P("(omega^2 - eps)*(omega - 3*eps)*(omega - 2)");
  auto report = ep_orders(newton_polygon(f));
  for (const auto& e : report.entries) {
    const double v = e.valuation.value->to_double();
    if (v <= 0) continue;
    std::vector<double> xs, ys;
    for (double eps : {1e-6, 1e-5, 1e-4}) {
      std::vector<ComplexF> coeffs;
      for (const auto& c : coefficients(f, kOmega)) {
        std::vector<ComplexF> pt{0.0, eps, 0.0};
        coeffs.push_back(c.evaluate(pt));
      }
      auto roots = roots_aberth(coeffs);
      std::sort(roots.begin(), roots.end(), [](ComplexF a, ComplexF b) { return std::abs(a) < std::abs(b); });
      // the valuation-v roots sit at |eps|^v; pick the one closest in log scale
      double best = 1e9, mag = 0;
      for (auto r : roots) {
        double d = std::abs(std::log10(std::abs(r)) - v * std::log10(eps));
        if (d < best) best = d, mag = std::abs(r);
      }
      xs.push_back(std::log10(eps));
      ys.push_back(std::log10(mag));
    }
    const double slope = (ys[2] - ys[0]) / (xs[2] - xs[0]);
    CHECK(std::abs(slope - v) < 0.02);
  }
}

TEST_CASE("qubit and spin-1/2 polygons") {
  auto m = builtin_model(BuiltinName::Qubit);
  std::map<std::string, GaussRational> b{{"gamma_e", oracle::q("1")}, {"gamma_f", oracle::q("0")}, {"J", oracle::q("1/4")}};
  auto l = substitute(m.split.effective(), b);
  auto shift = MultiPoly::constant(l.vars(), oracle::q("-1/2"));
  auto gf = newton_polygon(char_poly(l, substitute(perturbation_matrix(m.spec, "gamma_f"), b), shift));
  auto j = newton_polygon(char_poly(l, substitute(perturbation_matrix(m.spec, "J"), b), shift));
  CHECK(polygon_to_json(gf)["segments"].dump() ==
        R"([{"end":[1,1],"hspan":1,"slope":"-1","start":[0,2]},{"end":[4,0],"hspan":3,"slope":"-1/3","start":[1,1]}])");
  CHECK(polygon_to_json(j)["report"].dump() ==
        R"([{"multiplicity":2,"valuation":"inf"},{"multiplicity":2,"valuation":"1/2"}])");
  CHECK(polygon_to_json(j)["schema"] == 1);
}

}
