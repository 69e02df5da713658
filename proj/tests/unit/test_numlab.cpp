#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "../support/oracles.hpp"
#include "lep/experiments.hpp"
#include "lep/expr.hpp"
#include "lep/lindblad.hpp"
#include "lep/numeric.hpp"
#include "lep/tropical.hpp"

using namespace lep;
using oracle::q;

namespace {

bool contains(const std::vector<ComplexF>& roots, ComplexF z, double tol) {
  return std::any_of(roots.begin(), roots.end(), [&](ComplexF r) { return std::abs(r - z) <= tol; });
}

struct QubitSetup {
  CMatrix l0, lgf, lj;
  MultiPoly fgf, fj;
};

QubitSetup qubit() {
  auto m = builtin_model(BuiltinName::Qubit);
  std::map<std::string, GaussRational> b{{"gamma_e", q("1")}, {"gamma_f", q("0")}, {"J", q("1/4")}};
  auto l = substitute(m.split.effective(), b);
  auto gf = substitute(perturbation_matrix(m.spec, "gamma_f"), b);
  auto j = substitute(perturbation_matrix(m.spec, "J"), b);
  auto shift = MultiPoly::constant(l.vars(), q("-1/2"));
  return {to_numeric(l), to_numeric(gf), to_numeric(j), char_poly(l, gf, shift), char_poly(l, j, shift)};
}

}  // namespace

TEST_SUITE("numlab") {

TEST_CASE("aberth basic roots") {
  std::vector<ComplexF> c{1.0, 0.0, 1.0};
  auto r = roots_aberth(c);
  REQUIRE(r.size() == 2);
  CHECK(contains(r, {0, 1}, 1e-12));
  CHECK(contains(r, {0, -1}, 1e-12));

  std::vector<ComplexF> cube{-1.0, 3.0, -3.0, 1.0};  // (x - 1)^3
  for (auto z : roots_aberth(cube)) CHECK(std::abs(z - 1.0) < 1e-4);

  std::vector<ComplexF> quartic{-1e-4, 0, 0, 0, 1.0};
  for (auto z : roots_aberth(quartic)) CHECK(std::abs(std::abs(z) - 0.1) < 1e-12);

  std::vector<ComplexF> zeros{0, 0, 2.0, 1.0};
  auto rz = roots_aberth(zeros);
  CHECK(std::count(rz.begin(), rz.end(), ComplexF{}) == 2);
  CHECK(contains(rz, -2.0, 1e-12));
}

TEST_CASE("aberth preconditions") {
  std::vector<ComplexF> constant{1.0};
  CHECK_THROWS_AS(roots_aberth(constant), PreconditionError);
  std::vector<ComplexF> lead0{1.0, 0.0};
  CHECK_THROWS_AS(roots_aberth(lead0), PreconditionError);
  std::vector<ComplexF> nan{1.0, std::nan("")};
  CHECK_THROWS_AS(roots_aberth(nan), PreconditionError);
  AberthOptions one_sweep;
  one_sweep.max_sweeps = 1;
  std::vector<ComplexF> wilkinson{1.0};
  for (int k = 1; k <= 12; ++k) {
    std::vector<ComplexF> next(wilkinson.size() + 1);
    for (std::size_t i = 0; i < wilkinson.size(); ++i) {
      next[i + 1] += wilkinson[i];
      next[i] -= static_cast<double>(k) * wilkinson[i];
    }
    wilkinson = next;
  }
  try {
    roots_aberth(wilkinson, one_sweep);
    FAIL("converged in one sweep");
  } catch (const RootFindingError& e) {
    CHECK(e.best_iterate().size() == 12);
    CHECK(e.residual() > 0);
  }
}

TEST_CASE("eigenvalues") {
  CMatrix d(3);
  d(0, 0) = 1, d(1, 1) = 2, d(2, 2) = 3;
  auto ev = eigenvalues(d);
  for (double x : {1.0, 2.0, 3.0}) CHECK(contains(ev, x, 1e-12));

  auto qs = qubit();
  for (auto z : eigenvalues(qs.l0)) CHECK(std::abs(z + 0.5) < 1e-6);

  auto s = builtin_model(BuiltinName::SpinHalf);
  auto l = substitute(s.split.effective(), {{"gamma_minus", q("0")}, {"gamma_x", q("1")}, {"gamma_y", q("2")}, {"Omega", q("1")}});
  auto es = eigenvalues(to_numeric(l));
  CHECK(std::count_if(es.begin(), es.end(), [](ComplexF z) { return std::abs(z + 3.0) < 1e-8; }) == 2);

  CHECK_THROWS_AS(eigenvalues(CMatrix(33)), PreconditionError);
}

TEST_CASE("eigenvalues satisfy the exact characteristic polynomial") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> d(-5, 5);
  const Vars v = model_vars({});
  for (int t = 0; t < 30; ++t) {
    std::vector<std::vector<GaussRational>> rows(4, std::vector<GaussRational>(4));
    for (auto& r : rows)
      for (auto& e : r) e = GaussRational(Rational(d(rng)), Rational(d(rng)));
    auto m = PolyMatrix::from_constants(rows, v);
    auto p = char_poly(m, std::nullopt, MultiPoly(v));
    std::vector<ComplexF> coeffs;
    double norm = 0;
    for (const auto& c : coefficients(p, kOmega)) {
      coeffs.push_back(c.constant_term().to_complex());
      norm = std::max(norm, std::abs(coeffs.back()));
    }
    for (auto z : eigenvalues(to_numeric(m))) {
      ComplexF val = 0;
      for (std::size_t k = coeffs.size(); k-- > 0;) val = val * z + coeffs[k];
      CHECK(std::abs(val) < 1e-8 * norm * std::max(1.0, std::pow(std::abs(z), 4)));
    }
  }
}

TEST_CASE("eigenvalue multiset invariant under diagonal similarity") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(-1, 1);
  CMatrix a(5);
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t c = 0; c < 5; ++c) a(r, c) = {u(rng), u(rng)};
  CMatrix b = a;
  const double s[5] = {1, 2, 0.5, 4, 0.25};
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t c = 0; c < 5; ++c) b(r, c) = a(r, c) * s[r] / s[c];
  auto ea = eigenvalues(a), eb = eigenvalues(b);
  for (auto z : ea) CHECK(contains(eb, z, 1e-9));
}

TEST_CASE("scaling oracle for omega^n = eps") {
  const auto grid = log_grid(1e-6, 1e-2, 25);
  for (std::size_t n : {2u, 3u, 4u}) {
    CMatrix l0, l1;
    oracle::companion_family(n, l0, l1);
    auto r = scaling_sweep(l0, l1, 0.0, grid);
    CHECK(std::abs(r.fit.slope - 1.0 / static_cast<double>(n)) < 1e-3);
    CHECK(r.fit.npoints == 25);
    CHECK(r.fit.rsquared <= 1.0);
  }
}

TEST_CASE("scaling sweep on the qubit") {
  auto qs = qubit();
  const auto grid = log_grid(1e-6, 1e-2, 25);
  CHECK(std::abs(scaling_sweep(qs.l0, qs.lgf, -0.5, grid).fit.slope - 1.0 / 3) < 0.05);
  CHECK(std::abs(scaling_sweep(qs.l0, qs.lj, -0.5, grid).fit.slope - 0.5) < 0.05);
  ScalingOptions slow;
  slow.branch = Branch::Slowest;
  CHECK(std::abs(scaling_sweep(qs.l0, qs.lgf, -0.5, grid, slow).fit.slope - 1.0) < 0.05);
  CHECK_THROWS_AS(scaling_sweep(qs.l0, qs.lgf, 5.0, grid), PreconditionError);
  std::vector<double> unsorted{1e-3, 1e-4, 1e-5};
  CHECK_THROWS_AS(scaling_sweep(qs.l0, qs.lgf, -0.5, unsorted), PreconditionError);
}

TEST_CASE("encircling permutations") {
  auto qs = qubit();
  auto gf = encircle(qs.l0, qs.lgf, 0.01, 400);
  CHECK(gf.cycles == std::vector<std::size_t>{3, 1});
  CHECK(gf.tracking_residual < 0.5 * gf.min_gap);
  auto j = encircle(qs.l0, qs.lj, 0.01, 400);
  CHECK(j.cycles == std::vector<std::size_t>{2, 1, 1});
  CHECK(j.trace.size() == 401);
  CHECK_THROWS_AS(encircle(qs.l0, qs.lj, 0.01, 50), PreconditionError);
  CHECK_THROWS_AS(encircle(qs.l0, qs.lj, -1.0, 400), PreconditionError);
}

TEST_CASE("looping twice squares the permutation") {
  auto qs = qubit();
  for (const CMatrix* l1 : {&qs.lgf, &qs.lj}) {
    auto once = encircle(qs.l0, *l1, 0.01, 400, 1);
    auto twice = encircle(qs.l0, *l1, 0.01, 400, 2);
    std::vector<std::size_t> sq(once.permutation.size());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = once.permutation[once.permutation[i]];
    CHECK(twice.permutation == sq);
    std::vector<std::size_t> sorted = once.permutation;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(sorted[i] == i);
  }
}

TEST_CASE("cycle lengths") {
  std::vector<std::size_t> p{1, 2, 0, 3, 5, 4};
  CHECK(cycle_lengths(p) == std::vector<std::size_t>{3, 2, 1});
}

TEST_CASE("amoeba of simple curves") {
  const Vars v = model_vars({});
  AmoebaGrid grid{1e-6, 1e-2, 20, 16, true};
  auto line = amoeba_sample(parse_expr("omega - eps", v), grid);
  for (const auto& p : line.points) CHECK(std::abs(p.logeps - p.logmag) < 1e-9);

  auto sq = amoeba_sample(parse_expr("omega^2 - eps", v), grid);
  for (const auto& p : sq.points) CHECK(std::abs(p.logmag - p.logeps / 2) < 1e-9);
  auto fits = fit_tentacles(sq, tentacle_directions(newton_polygon(parse_expr("omega^2 - eps", v))));
  REQUIRE(fits.size() == 1);
  REQUIRE(fits[0].slope);
  CHECK(std::abs(*fits[0].slope - 2.0) < 0.05);

  CHECK_THROWS_AS(amoeba_sample(parse_expr("omega^2 - 1", v), grid), PreconditionError);
  CHECK_THROWS_AS(amoeba_sample(MultiPoly(v), grid), PreconditionError);
}

TEST_CASE("amoeba tentacles agree with the tropical prediction") {
  auto qs = qubit();
  for (const MultiPoly* f : {&qs.fgf, &qs.fj}) {
    auto cloud = amoeba_sample(*f, AmoebaGrid{});
    CHECK(cloud.skipped == 0);
    for (const auto& p : cloud.points) CHECK((std::isfinite(p.logeps) && std::isfinite(p.logmag)));
    auto dirs = tentacle_directions(newton_polygon(*f));
    auto fits = fit_tentacles(cloud, dirs);
    for (const auto& fit : fits) {
      REQUIRE(fit.slope);
      const double expected = fit.direction.kind == TentacleKind::Sloped ? fit.direction.slope.to_double() : 0.0;
      CHECK(std::abs(*fit.slope - expected) < 0.15);
    }
  }
}

TEST_CASE("amoeba sampling is deterministic and reports empty clusters") {
  auto qs = qubit();
  AmoebaGrid grid{1e-6, 1e-2, 10, 8, true};
  auto a = amoeba_sample(qs.fgf, grid, 1), b = amoeba_sample(qs.fgf, grid, 1);
  std::ostringstream sa, sb;
  write_amoeba_csv(sa, a);
  write_amoeba_csv(sb, b);
  CHECK(sa.str() == sb.str());
  CHECK(sa.str().rfind("logeps,logmag\n", 0) == 0);

  TentacleDirection nowhere{TentacleKind::Sloped, Rational(-5), 1, -5};
  std::vector<TentacleDirection> dirs{nowhere};
  auto fits = fit_tentacles(a, dirs);
  CHECK_FALSE(fits[0].slope.has_value());

  AmoebaCloud narrow;
  narrow.points = {{-3.0, -1.0, AmoebaChart::Eps}, {-2.5, -1.0, AmoebaChart::Eps}};
  CHECK_THROWS_AS(fit_tentacles(narrow, dirs), PreconditionError);
}

TEST_CASE("csv headers") {
  auto qs = qubit();
  std::ostringstream s, e;
  write_scaling_csv(s, scaling_sweep(qs.l0, qs.lj, -0.5, log_grid(1e-6, 1e-2, 5)));
  CHECK(s.str().rfind("epsilon,re,im,logeps,logmag\n", 0) == 0);
  write_encircle_csv(e, encircle(qs.l0, qs.lj, 0.01, 100));
  CHECK(e.str().rfind("t,index,re,im\n", 0) == 0);
}

}
