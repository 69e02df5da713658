#include <doctest.h>

#include <random>

#include "../support/oracles.hpp"
#include "lep/epscan.hpp"
#include "lep/expr.hpp"
#include "lep/lindblad.hpp"
#include "lep/model_io.hpp"

using namespace lep;
using oracle::q;

namespace {

PolyMatrix from_text(const std::vector<std::vector<const char*>>& rows, const Vars& vars) {
  PolyMatrix m(rows.size(), rows.size(), vars);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows.size(); ++c) m(r, c) = parse_expr(rows[r][c], vars);
  return m;
}

// Row vector vec(I)^T L, which must vanish for a trace-preserving generator.
bool trace_preserving(const PolyMatrix& l, std::size_t n) {
  for (std::size_t col = 0; col < l.cols(); ++col) {
    MultiPoly sum(l.vars());
    for (std::size_t k = 0; k < n; ++k) sum += l(flatten_index(k, k, n), col);
    if (!sum.is_zero()) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("lindblad") {

TEST_CASE("row-major flattening") {
  CHECK(flatten_index(0, 0, 2) == 0);
  CHECK(flatten_index(0, 1, 2) == 1);
  CHECK(flatten_index(1, 0, 2) == 2);
  CHECK(flatten_index(1, 1, 2) == 3);
  CHECK_THROWS_AS(flatten_index(2, 0, 2), PreconditionError);
}

TEST_CASE("built-in parameter lists") {
  CHECK(builtin_model("spin_half").spec.params == std::vector<std::string>{"Omega", "gamma_minus", "gamma_x", "gamma_y"});
  CHECK(builtin_model("qubit").spec.params == std::vector<std::string>{"gamma_e", "gamma_f", "J"});
  CHECK_THROWS_AS(builtin_model("qutrit"), InputError);
}

TEST_CASE("qubit split matches the reference no-jump and jump matrices") {
  auto m = builtin_model(BuiltinName::Qubit);
  const Vars& v = m.spec.vars;
  auto l0 = from_text({{"-gamma_e", "i*J", "-i*J", "0"},
                       {"i*J", "-(gamma_e + gamma_f)/2", "0", "-i*J"},
                       {"-i*J", "0", "-(gamma_e + gamma_f)/2", "i*J"},
                       {"0", "-i*J", "i*J", "-gamma_f"}},
                      v);
  auto jumps = from_text({{"0", "0", "0", "gamma_f"}, {"0", "0", "0", "0"}, {"0", "0", "0", "0"}, {"0", "0", "0", "0"}}, v);
  CHECK(m.split.no_jump == l0);
  CHECK(m.split.jumps == jumps);
  CHECK(build_liouvillian(m.spec).matrix == l0 + jumps);
}

TEST_CASE("spin-1/2 degeneracy conditions match the reference expressions") {
  auto m = builtin_model(BuiltinName::SpinHalf);
  const Vars& v = m.spec.vars;
  auto l = m.split.effective();
  auto conds = degeneracy_conditions(char_poly(l, std::nullopt, MultiPoly::variable(v, kShift)), 2);
  const char* c1 =
      "0.25*gamma_minus^3 + 1.5*gamma_minus^2*gamma_x + 2*gamma_minus*gamma_x^2 + 1.5*gamma_minus^2*gamma_y"
      " + 8*gamma_minus*gamma_x*gamma_y + 8*gamma_x^2*gamma_y + 2*gamma_minus*gamma_y^2 + 8*gamma_x*gamma_y^2"
      " + 1*gamma_minus*Omega^2 + 2*gamma_x*Omega^2 + 2*gamma_y*Omega^2"
      " + 2.5*gamma_minus^2*omega0 + 10*gamma_minus*gamma_x*omega0 + 8*gamma_x^2*omega0"
      " + 10*gamma_minus*gamma_y*omega0 + 24*gamma_x*gamma_y*omega0 + 8*gamma_y^2*omega0"
      " + 2*Omega^2*omega0 + 6*gamma_minus*omega0^2 + 12*gamma_x*omega0^2 + 12*gamma_y*omega0^2 + 4*omega0^3";
  const char* c0 =
      "0.25*gamma_minus^3*omega0 + 1.5*gamma_minus^2*gamma_x*omega0 + 2*gamma_minus*gamma_x^2*omega0"
      " + 1.5*gamma_minus^2*gamma_y*omega0 + 8*gamma_minus*gamma_x*gamma_y*omega0 + 8*gamma_x^2*gamma_y*omega0"
      " + 2*gamma_minus*gamma_y^2*omega0 + 8*gamma_x*gamma_y^2*omega0 + 1*gamma_minus*Omega^2*omega0"
      " + 2*gamma_x*Omega^2*omega0 + 2*gamma_y*Omega^2*omega0"
      " + 1.25*gamma_minus^2*omega0^2 + 5*gamma_minus*gamma_x*omega0^2 + 4*gamma_x^2*omega0^2"
      " + 5*gamma_minus*gamma_y*omega0^2 + 12*gamma_x*gamma_y*omega0^2 + 4*gamma_y^2*omega0^2"
      " + 1*Omega^2*omega0^2 + 2*gamma_minus*omega0^3 + 4*gamma_x*omega0^3 + 4*gamma_y*omega0^3 + omega0^4";
  CHECK(conds.conditions[1] == parse_expr(c1, v));
  CHECK(conds.conditions[0] == parse_expr(c0, v));
}

TEST_CASE("spin-1/2 Hamiltonian") {
  auto m = builtin_model(BuiltinName::SpinHalf);
  CHECK(m.spec.hamiltonian == from_text({{"Omega/2", "0"}, {"0", "-Omega/2"}}, m.spec.vars));
  CHECK(m.split.jumps.is_zero());
}

TEST_CASE("qubit effective Liouvillian at the EP has a quadruple eigenvalue -1/2") {
  auto m = builtin_model(BuiltinName::Qubit);
  auto l = substitute(m.split.effective(), {{"gamma_e", q("1")}, {"gamma_f", q("0")}, {"J", q("1/4")}});
  auto p = char_poly(l, std::nullopt, MultiPoly::constant(l.vars(), 0));
  CHECK(p == parse_expr("(omega + 1/2)^4", l.vars()));
  // independent expansion of det(L - omega I)
  auto shifted = l - MultiPoly::variable(l.vars(), kOmega) * PolyMatrix::identity(4, l.vars());
  CHECK(oracle::cofactor_det(shifted) == p);
}

TEST_CASE("perturbation matrices") {
  auto m = builtin_model(BuiltinName::Qubit);
  const Vars& v = m.spec.vars;
  CHECK(perturbation_matrix(m.spec, "gamma_f") ==
        from_text({{"0", "0", "0", "1"}, {"0", "-1/2", "0", "0"}, {"0", "0", "-1/2", "0"}, {"0", "0", "0", "-1"}}, v));
  CHECK(perturbation_matrix(m.spec, "J") ==
        from_text({{"0", "i", "-i", "0"}, {"i", "0", "0", "-i"}, {"-i", "0", "0", "i"}, {"0", "-i", "i", "0"}}, v));
  CHECK_THROWS_AS(perturbation_matrix(m.spec, "kappa"), InputError);

  auto s = builtin_model(BuiltinName::SpinHalf);
  auto d = perturbation_matrix(s.spec, "Omega");
  CHECK(d(0, 0).is_zero());
  CHECK(d(0, 3).is_zero());
  CHECK(d(1, 1) == MultiPoly::constant(s.spec.vars, -GaussRational::i()));
}

TEST_CASE("generic perturbations are deterministic Gaussian integers in [-9, 9]") {
  const Vars v = model_vars({});
  auto a = generic_perturbation(4, 42, v);
  CHECK(a == generic_perturbation(4, 42, v));
  CHECK_FALSE(a == generic_perturbation(4, 43, v));
  for (const auto& e : a.entries()) {
    auto c = e.constant_value();
    CHECK(c.re().is_integer());
    CHECK(c.im().is_integer());
    CHECK(abs(c.re()) <= Rational(9));
    CHECK(abs(c.im()) <= Rational(9));
  }
}

TEST_CASE("trace preservation for spin-1/2 and random Lindblad models") {
  CHECK(trace_preserving(builtin_model(BuiltinName::SpinHalf).split.effective(), 2));

  std::mt19937_64 rng(37);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int t = 0; t < 12; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 2);
    ModelSpec spec;
    spec.name = "random";
    spec.dim = n;
    spec.params = {"k1", "k2"};
    spec.vars = model_vars(spec.params);
    spec.hamiltonian = PolyMatrix(n, n, spec.vars);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = r; c < n; ++c) {
        GaussRational z = r == c ? GaussRational(d(rng)) : GaussRational(d(rng), d(rng));
        spec.hamiltonian(r, c) = MultiPoly::constant(spec.vars, z) * MultiPoly::variable(spec.vars, "k1");
        spec.hamiltonian(c, r) = MultiPoly::constant(spec.vars, z.conj()) * MultiPoly::variable(spec.vars, "k1");
      }
    for (int j = 0; j < 2; ++j) {
      JumpChannel ch{MultiPoly::variable(spec.vars, j ? "k2" : "k1"), PolyMatrix(n, n, spec.vars), ChannelKind::Lindblad};
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) ch.op(r, c) = MultiPoly::constant(spec.vars, GaussRational(d(rng), d(rng)));
      spec.jumps.push_back(ch);
    }
    validate(spec);
    CHECK(trace_preserving(build_liouvillian(spec).matrix, n));
  }
}

TEST_CASE("validation") {
  auto m = builtin_model(BuiltinName::Qubit).spec;
  auto bad = m;
  bad.hamiltonian(0, 1) = parse_expr("i*J", bad.vars);
  CHECK_THROWS_AS(validate(bad), InputError);
  auto shape = m;
  shape.jumps[0].op = PolyMatrix(3, 3, m.vars);
  CHECK_THROWS(validate(shape));
}

TEST_CASE("model files round-trip and report locations") {
  auto m = builtin_model(BuiltinName::Qubit).spec;
  auto doc = model_to_json(m);
  auto back = model_from_json(doc);
  CHECK(build_liouvillian(back).matrix == build_liouvillian(m).matrix);
  CHECK(hybrid_split(back).jumps == hybrid_split(m).jumps);

  const char* text = R"({"name": "toy", "dim": 2, "params": ["g"],
    "hamiltonian": [["0", "g"], ["g", "0"]],
    "jumps": [{"rate": "g", "operator": [["0", "1"], ["0", "0"]]}]})";
  auto toy = parse_model_text(text);
  CHECK(toy.dim == 2);
  CHECK(toy.jumps.size() == 1);
  CHECK(toy.jumps[0].kind == ChannelKind::Lindblad);

  try {
    parse_model_text(R"({"name": "t", "dim": 2, "params": ["g"], "hamiltonian": [["0", "g*"], ["g", "0"]], "jumps": []})");
    FAIL("accepted");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("hamiltonian[0][1]") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_model_text("{\"name\": "), ParseError);
  CHECK_THROWS_AS(parse_model_text(R"({"name": "t", "dim": 2, "params": ["omega"], "hamiltonian": [["0","0"],["0","0"]], "jumps": []})"),
                  InputError);
  CHECK_THROWS_AS(parse_model_text(R"({"name": "t", "dim": 2, "params": [], "hamiltonian": [["0","0"],["0","0"]],
    "jumps": [{"rate": "1", "operator": [["0","1"],["0","0"]], "kind": "teleport"}]})"),
                  InputError);
}

}
