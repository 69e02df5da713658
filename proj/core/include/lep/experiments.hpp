#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "lep/numeric.hpp"
#include "lep/poly.hpp"
#include "lep/tropical.hpp"

namespace lep {

// n log-spaced values from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int n);

// ---- perturbation scaling ------------------------------------------------

enum class Branch {
  Fastest,  // largest |omega - omega0| member of the cluster
  Slowest,  // smallest nonzero |omega - omega0| member
};

struct ScalingSample {
  double eps = 0;
  ComplexF value;  // tracked eigenvalue
  double logeps = 0;
  double logmag = 0;  // log10 |value - omega0|
};

struct ScalingFit {
  double slope = 0;
  double intercept = 0;
  double rsquared = 0;
  int npoints = 0;
};

struct ScalingResult {
  std::vector<ScalingSample> samples;
  ScalingFit fit;
};

struct ScalingOptions {
  Branch branch = Branch::Fastest;
  // Eigenvalues within this distance (times max(1, |omega0|)) of omega0 at the
  // smallest eps form the cluster.
  double cluster_tolerance = 0.05;
};

// Least-squares line through (x, y).
ScalingFit fit_line(std::span<const double> x, std::span<const double> y);

ScalingResult scaling_sweep(const CMatrix& l0, const CMatrix& l1, ComplexF omega0,
                            std::span<const double> eps_grid, const ScalingOptions& options = {});

// ---- encircling ----------------------------------------------------------

struct PermutationReport {
  std::vector<std::size_t> permutation;  // start index -> end index
  std::vector<std::size_t> cycles;       // cycle lengths, descending
  double tracking_residual = 0;          // largest per-step matching distance
  double min_gap = 0;                    // smallest gap between distinct eigenvalues on the path
  std::vector<double> t;                 // path parameter of each recorded step
  std::vector<std::vector<ComplexF>> trace;  // tracked eigenvalues per step
};

// Tracks the eigenvalues of l0 + radius e^{it} l1 over t in [0, 2 pi turns].
// Eigenvalues that coincide within a relative 1e-6 are matched in index order.
PermutationReport encircle(const CMatrix& l0, const CMatrix& l1, double radius, int steps, int turns = 1);

std::vector<std::size_t> cycle_lengths(std::span<const std::size_t> permutation);

// ---- amoeba --------------------------------------------------------------

// Which variable was sampled on the polar grid; the other one was solved for.
enum class AmoebaChart { Eps, Omega };

struct AmoebaPoint {
  double logeps = 0;  // log10 |eps|
  double logmag = 0;  // log10 |omega|
  AmoebaChart chart = AmoebaChart::Eps;
};

struct AmoebaGrid {
  double modulus_min = 1e-6;
  double modulus_max = 1e-2;
  int n_moduli = 40;
  int n_phases = 64;
  // Also sample omega on the grid and solve for eps, which resolves
  // tentacles escaping in the log|omega| direction.
  bool omega_chart = true;
};

struct AmoebaCloud {
  std::vector<AmoebaPoint> points;
  AmoebaGrid grid;
  std::uint64_t seed = 0;
  std::size_t skipped = 0;  // grid points where root finding failed
};

inline constexpr double kAmoebaCutoff = 1e-14;

// f must involve only omega and eps (other variables substituted) and depend
// on both.
AmoebaCloud amoeba_sample(const MultiPoly& f, const AmoebaGrid& grid, std::uint64_t seed = 0,
                          std::string_view omega = kOmega, std::string_view eps = kEps);

struct TentacleFit {
  TentacleDirection direction;
  // dY/dX for sloped and horizontal tentacles, dX/dY for vertical ones, in
  // the frame X = log|omega|, Y = log|eps|. Empty when no support.
  std::optional<double> slope;
  std::size_t support = 0;
};

struct TentacleFitOptions {
  double angle_tolerance_deg = 15.0;
  int min_support = 3;
};

// Assigns points to the nearest expected direction (by angle from the
// origin), keeps the asymptotic decade of each tentacle and fits a line.
std::vector<TentacleFit> fit_tentacles(const AmoebaCloud& cloud, std::span<const TentacleDirection> expected,
                                       const TentacleFitOptions& options = {});

// ---- CSV -----------------------------------------------------------------

void write_scaling_csv(std::ostream& out, const ScalingResult& result);
void write_amoeba_csv(std::ostream& out, const AmoebaCloud& cloud);
void write_encircle_csv(std::ostream& out, const PermutationReport& report);

}  // namespace lep
