#include "lep/lindblad.hpp"

#include <limits>
#include <random>

#include "lep/error.hpp"

namespace lep {

Vars model_vars(const std::vector<std::string>& params) {
  std::vector<std::string> names = params;
  for (auto reserved : {kShift, kEps, kOmega}) {
    for (const auto& p : params)
      if (p == reserved) throw InputError("parameter name '" + p + "' is reserved");
    names.emplace_back(reserved);
  }
  return Vars(std::move(names));
}

namespace {

void require_parameter_only(const MultiPoly& p, const std::string& what) {
  for (auto reserved : {kShift, kEps, kOmega})
    if (p.depends_on(reserved))
      throw InputError(what + " must not depend on '" + std::string(reserved) + "'");
}

}  // namespace

void validate(const ModelSpec& model) {
  if (model.dim == 0) throw InputError("model dimension must be positive");
  auto check_shape = [&](const PolyMatrix& m, const std::string& what) {
    if (m.rows() != model.dim || m.cols() != model.dim)
      throw StructuralError(what + " must be " + std::to_string(model.dim) + "x" +
                            std::to_string(model.dim));
    if (!(m.vars() == model.vars)) throw StructuralError(what + " uses a foreign variable list");
    for (const auto& e : m.entries()) require_parameter_only(e, what);
  };
  check_shape(model.hamiltonian, "hamiltonian");
  if (!(model.hamiltonian == model.hamiltonian.adjoint()))
    throw InputError("hamiltonian is not Hermitian (parameters are treated as real)");
  for (std::size_t k = 0; k < model.jumps.size(); ++k) {
    const auto& j = model.jumps[k];
    check_shape(j.op, "jump operator " + std::to_string(k));
    if (!(j.rate.vars() == model.vars)) throw StructuralError("jump rate uses a foreign variable list");
    require_parameter_only(j.rate, "jump rate " + std::to_string(k));
  }
}

std::size_t flatten_index(std::size_t row, std::size_t col, std::size_t n) {
  if (row >= n || col >= n) throw PreconditionError("density-matrix index out of range");
  return row * n + col;
}

HybridSplit hybrid_split(const ModelSpec& model) {
  validate(model);
  const std::size_t n = model.dim;
  const Vars& vars = model.vars;
  const PolyMatrix id = PolyMatrix::identity(n, vars);
  const MultiPoly minus_i = MultiPoly::constant(vars, -GaussRational::i());
  const MultiPoly minus_half = MultiPoly::constant(vars, GaussRational(Rational(-1, 2)));
  const PolyMatrix& h = model.hamiltonian;

  HybridSplit out{minus_i * (kron(h, id) - kron(id, h.transpose())),
                  PolyMatrix(n * n, n * n, vars)};
  for (const auto& ch : model.jumps) {
    const PolyMatrix gdg = ch.op.adjoint() * ch.op;
    PolyMatrix anti = minus_half * (kron(gdg, id) + kron(id, gdg.transpose()));
    out.no_jump += ch.rate * anti;
    if (ch.kind == ChannelKind::Loss) continue;
    PolyMatrix sandwich = ch.rate * kron(ch.op, ch.op.conj());
    if (ch.kind == ChannelKind::Lindblad)
      out.no_jump += sandwich;
    else
      out.jumps += sandwich;
  }
  return out;
}

Superoperator build_liouvillian(const ModelSpec& model) {
  return {hybrid_split(model).effective(), model.dim};
}

namespace {

ModelSpec spin_half_spec() {
  ModelSpec m;
  m.name = "spin_half";
  m.dim = 2;
  m.params = {"Omega", "gamma_minus", "gamma_x", "gamma_y"};
  m.vars = model_vars(m.params);
  const Vars& v = m.vars;
  const GaussRational i = GaussRational::i();
  auto mat = [&](std::vector<std::vector<GaussRational>> rows) { return PolyMatrix::from_constants(rows, v); };
  const PolyMatrix sigma_z = mat({{1, 0}, {0, -1}});
  const PolyMatrix sigma_x = mat({{0, 1}, {1, 0}});
  const PolyMatrix sigma_y = mat({{0, -i}, {i, 0}});
  const PolyMatrix sigma_minus = mat({{0, 0}, {1, 0}});
  m.hamiltonian =
      MultiPoly::variable(v, "Omega") * GaussRational(Rational(1, 2)) * sigma_z;
  m.jumps = {{MultiPoly::variable(v, "gamma_minus"), sigma_minus, ChannelKind::Lindblad},
             {MultiPoly::variable(v, "gamma_x"), sigma_x, ChannelKind::Lindblad},
             {MultiPoly::variable(v, "gamma_y"), sigma_y, ChannelKind::Lindblad}};
  return m;
}

// Basis order (|e>, |f>).
ModelSpec qubit_spec() {
  ModelSpec m;
  m.name = "qubit";
  m.dim = 2;
  m.params = {"gamma_e", "gamma_f", "J"};
  m.vars = model_vars(m.params);
  const Vars& v = m.vars;
  auto mat = [&](std::vector<std::vector<GaussRational>> rows) { return PolyMatrix::from_constants(rows, v); };
  m.hamiltonian = MultiPoly::variable(v, "J") * mat({{0, 1}, {1, 0}});
  m.jumps = {{MultiPoly::variable(v, "gamma_e"), mat({{1, 0}, {0, 0}}), ChannelKind::Loss},
             {MultiPoly::variable(v, "gamma_f"), mat({{0, 1}, {0, 0}}), ChannelKind::QuantumJump}};
  return m;
}

}  // namespace

BuiltinModel builtin_model(BuiltinName name) {
  ModelSpec spec = name == BuiltinName::SpinHalf ? spin_half_spec() : qubit_spec();
  HybridSplit split = hybrid_split(spec);
  return {std::move(spec), std::move(split)};
}

BuiltinModel builtin_model(std::string_view name) {
  if (name == "spin_half") return builtin_model(BuiltinName::SpinHalf);
  if (name == "qubit") return builtin_model(BuiltinName::Qubit);
  throw InputError("unknown built-in model '" + std::string(name) + "' (expected spin_half or qubit)");
}

PolyMatrix perturbation_matrix(const ModelSpec& model, std::string_view param) {
  bool known = false;
  for (const auto& p : model.params) known = known || p == param;
  if (!known) throw InputError("model '" + model.name + "' has no parameter '" + std::string(param) + "'");
  return derivative(build_liouvillian(model).matrix, param);
}

namespace {

// Uniform integer in [-9, 9] by rejection, so the stream is identical on
// every standard library.
long draw_digit(std::mt19937_64& rng) {
  constexpr std::uint64_t span = 19;
  constexpr std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / span * span;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<long>(x % span) - 9;
}

}  // namespace

PolyMatrix generic_perturbation(std::size_t n, std::uint64_t seed, const Vars& vars) {
  if (n == 0) throw PreconditionError("perturbation dimension must be positive");
  std::mt19937_64 rng(seed);
  PolyMatrix m(n, n, vars);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      long re = draw_digit(rng);
      long im = draw_digit(rng);
      m(r, c) = MultiPoly::constant(vars, GaussRational(Rational(re), Rational(im)));
    }
  return m;
}

MultiPoly char_poly(const PolyMatrix& l0, const std::optional<PolyMatrix>& l1, const MultiPoly& shift) {
  if (!l0.is_square()) throw StructuralError("characteristic polynomial of a non-square matrix");
  const Vars& vars = l0.vars();
  if (!(shift.vars() == vars)) throw StructuralError("shift uses a foreign variable list");
  PolyMatrix m = l0;
  if (l1) {
    if (l1->rows() != l0.rows() || l1->cols() != l0.cols())
      throw StructuralError("perturbation matrix dimension mismatch");
    m += MultiPoly::variable(vars, kEps) * embed(*l1, vars);
  }
  const MultiPoly diag = MultiPoly::variable(vars, kOmega) + shift;
  for (std::size_t k = 0; k < m.rows(); ++k) m(k, k) -= diag;
  return det_bareiss(m);
}

}  // namespace lep
