#include <benchmark/benchmark.h>

#include <random>

#include "lep/epscan.hpp"
#include "lep/experiments.hpp"
#include "lep/lindblad.hpp"
#include "lep/numeric.hpp"
#include "lep/resultant.hpp"

using namespace lep;

namespace {

GaussRational q(const char* s) { return GaussRational(Rational::parse(s)); }

Bindings spin_slice() { return {{"gamma_minus", q("0")}, {"gamma_y", q("2")}, {"Omega", q("1")}}; }

CMatrix random_matrix(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  CMatrix m(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = {d(rng), d(rng)};
  return m;
}

}  // namespace

static void BM_SymbolicCharPoly(benchmark::State& state) {
  auto m = builtin_model(BuiltinName::SpinHalf);
  auto l = m.split.effective();
  auto shift = MultiPoly::variable(l.vars(), kShift);
  for (auto _ : state) benchmark::DoNotOptimize(char_poly(l, std::nullopt, shift));
}
BENCHMARK(BM_SymbolicCharPoly)->Unit(benchmark::kMillisecond);

static void BM_ShiftResultant(benchmark::State& state) {
  auto m = builtin_model(BuiltinName::SpinHalf);
  auto l = m.split.effective();
  auto conds = degeneracy_conditions(char_poly(l, std::nullopt, MultiPoly::variable(l.vars(), kShift)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(eliminate_shift(conds));
}
BENCHMARK(BM_ShiftResultant)->Unit(benchmark::kMillisecond);

static void BM_Eigenvalues(benchmark::State& state) {
  auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(m));
}
BENCHMARK(BM_Eigenvalues)->Arg(4)->Arg(9)->Arg(16);

static void BM_Aberth(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> d;
  std::vector<ComplexF> c(static_cast<std::size_t>(state.range(0)) + 1);
  for (auto& x : c) x = {d(rng), d(rng)};
  for (auto _ : state) benchmark::DoNotOptimize(roots_aberth(c));
}
BENCHMARK(BM_Aberth)->Arg(8)->Arg(32);

static void BM_Scan(benchmark::State& state) {
  auto m = builtin_model(BuiltinName::SpinHalf);
  for (auto _ : state) benchmark::DoNotOptimize(scan(m, "gamma_x", spin_slice()));
}
BENCHMARK(BM_Scan)->Unit(benchmark::kMillisecond);

static void BM_Amoeba(benchmark::State& state) {
  auto m = builtin_model(BuiltinName::Qubit);
  Bindings b{{"gamma_e", q("1")}, {"gamma_f", q("0")}, {"J", q("1/4")}};
  auto l = substitute(m.split.effective(), b);
  auto l1 = substitute(perturbation_matrix(m.spec, "gamma_f"), b);
  auto f = char_poly(l, l1, MultiPoly::constant(l.vars(), q("-1/2")));
  for (auto _ : state) benchmark::DoNotOptimize(amoeba_sample(f, AmoebaGrid{}));
}
BENCHMARK(BM_Amoeba)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
