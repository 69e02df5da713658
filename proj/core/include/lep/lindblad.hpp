#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lep/poly.hpp"
#include "lep/poly_matrix.hpp"

namespace lep {

// How a dissipation channel rate * D[op] enters the superoperator.
//  Lindblad:    the full dissipator; counted in the no-jump part.
//  QuantumJump: the sandwich term op.rho.op^dagger goes to the jump part,
//               the anticommutator stays in the no-jump part.
//  Loss:        anticommutator only; population leaves the modelled space.
enum class ChannelKind { Lindblad, QuantumJump, Loss };

struct JumpChannel {
  MultiPoly rate;
  PolyMatrix op;
  ChannelKind kind = ChannelKind::Lindblad;
};

// Hilbert-space model. Every polynomial lives over `vars`, which is the
// parameter list followed by omega0, eps, omega (see model_vars).
struct ModelSpec {
  std::string name;
  std::size_t dim = 0;
  std::vector<std::string> params;
  Vars vars;
  PolyMatrix hamiltonian;
  std::vector<JumpChannel> jumps;
};

Vars model_vars(const std::vector<std::string>& params);

// Checks dimensions, Hermiticity of H under formal conjugation (parameters
// real), and that rates and operators only involve parameters.
void validate(const ModelSpec& model);

// Vectorized generator acting on row-major flattened density matrices.
struct Superoperator {
  PolyMatrix matrix;
  std::size_t hilbert_dim = 0;
};

struct HybridSplit {
  PolyMatrix no_jump;
  PolyMatrix jumps;
  PolyMatrix effective() const { return no_jump + jumps; }
};

// Position of rho(row, col) in the flattened vector: row * n + col.
std::size_t flatten_index(std::size_t row, std::size_t col, std::size_t n);

// -i(H (x) I - I (x) H^T) + sum_k rate_k (G (x) conj(G) - 1/2 G^dag G (x) I - 1/2 I (x) (G^dag G)^T),
// with the sandwich term omitted for Loss channels.
Superoperator build_liouvillian(const ModelSpec& model);
HybridSplit hybrid_split(const ModelSpec& model);

enum class BuiltinName { SpinHalf, Qubit };

struct BuiltinModel {
  ModelSpec spec;
  HybridSplit split;
};

// spin_half: H = Omega/2 sigma_z with sigma_-, sigma_x, sigma_y decay.
// qubit: driven {e, f} pair, H = J(|e><f| + |f><e|), |e> lost at gamma_e and
// refilled from |f> by quantum jumps at gamma_f.
BuiltinModel builtin_model(BuiltinName name);
BuiltinModel builtin_model(std::string_view name);

// Entrywise d/d(param) of the effective superoperator.
PolyMatrix perturbation_matrix(const ModelSpec& model, std::string_view param);

// n x n matrix of Gaussian integers with real and imaginary parts drawn
// independently and uniformly from {-9, ..., 9}; fully determined by seed.
PolyMatrix generic_perturbation(std::size_t n, std::uint64_t seed, const Vars& vars);

// det(l0 + eps * l1 - (omega + shift) I). Without l1 the result is eps-free.
// The eigenvalue omega0 of l0 sits at omega = 0 when shift = omega0.
MultiPoly char_poly(const PolyMatrix& l0, const std::optional<PolyMatrix>& l1, const MultiPoly& shift);

}  // namespace lep
