#include "lep/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <thread>

namespace lep {

namespace {

// Runs body(k) for k in [0, count) on a small thread pool. Each task writes
// only its own slot, so the result does not depend on scheduling.
template <typename Body>
void parallel_for(std::size_t count, Body body) {
  const std::size_t workers = std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k; (k = next.fetch_add(1)) < count;) {
        try {
          body(k);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

CMatrix shifted(const CMatrix& m, ComplexF s) {
  CMatrix out = m;
  for (std::size_t k = 0; k < out.size(); ++k) out(k, k) -= s;
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0) || !(hi >= lo) || n < 1) throw PreconditionError("log grid needs 0 < lo <= hi and n >= 1");
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log10(lo), b = std::log10(hi);
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = std::pow(10.0, a + (b - a) * k / (n - 1));
  out.back() = hi;
  return out;
}

ScalingFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw PreconditionError("line fit needs at least two points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
    syy += (y[k] - my) * (y[k] - my);
  }
  if (sxx == 0) throw PreconditionError("line fit needs distinct abscissae");
  ScalingFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.rsquared = syy == 0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  fit.npoints = static_cast<int>(x.size());
  return fit;
}

ScalingResult scaling_sweep(const CMatrix& l0, const CMatrix& l1, ComplexF omega0,
                            std::span<const double> eps_grid, const ScalingOptions& options) {
  if (eps_grid.size() < 3) throw PreconditionError("scaling sweep needs at least 3 eps values");
  for (std::size_t k = 0; k < eps_grid.size(); ++k) {
    if (!(eps_grid[k] > 0)) throw PreconditionError("eps values must be positive");
    if (k > 0 && !(eps_grid[k] > eps_grid[k - 1])) throw PreconditionError("eps values must be increasing");
  }
  if (l0.size() != l1.size()) throw StructuralError("L0 and L1 differ in dimension");

  // Deviations mu = omega - omega0 come straight from the shifted matrix.
  const CMatrix base = shifted(l0, omega0);
  std::vector<std::vector<ComplexF>> spectra(eps_grid.size());
  parallel_for(eps_grid.size(), [&](std::size_t k) {
    spectra[k] = eigenvalues(base + ComplexF(eps_grid[k]) * l1);
  });

  const double tol = options.cluster_tolerance * std::max(1.0, std::abs(omega0));
  std::vector<ComplexF> cluster;
  for (const auto& mu : spectra.front())
    if (std::abs(mu) <= tol) cluster.push_back(mu);
  if (cluster.empty()) throw PreconditionError("no eigenvalue cluster near omega0 at the smallest eps");

  ComplexF current;
  if (options.branch == Branch::Fastest) {
    current = *std::max_element(cluster.begin(), cluster.end(),
                                [](ComplexF a, ComplexF b) { return std::abs(a) < std::abs(b); });
  } else {
    std::vector<ComplexF> moving;
    for (auto mu : cluster)
      if (std::abs(mu) > 0) moving.push_back(mu);
    if (moving.empty()) throw PreconditionError("every cluster member stays at omega0");
    current = *std::min_element(moving.begin(), moving.end(),
                                [](ComplexF a, ComplexF b) { return std::abs(a) < std::abs(b); });
  }

  ScalingResult result;
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < eps_grid.size(); ++k) {
    if (k > 0) {
      // Compare in log space: on a log eps grid a branch moves by a roughly
      // constant factor, while other members differ in phase.
      auto log_distance = [&](ComplexF mu) {
        return mu == ComplexF{} ? std::numeric_limits<double>::infinity() : std::abs(std::log(mu / current));
      };
      current = *std::min_element(spectra[k].begin(), spectra[k].end(),
                                  [&](ComplexF a, ComplexF b) { return log_distance(a) < log_distance(b); });
    }
    if (std::abs(current) == 0) throw NumericalError("tracked branch collapsed onto omega0");
    ScalingSample s;
    s.eps = eps_grid[k];
    s.value = omega0 + current;
    s.logeps = std::log10(eps_grid[k]);
    s.logmag = std::log10(std::abs(current));
    xs.push_back(s.logeps);
    ys.push_back(s.logmag);
    result.samples.push_back(s);
  }
  result.fit = fit_line(xs, ys);
  return result;
}

std::vector<std::size_t> cycle_lengths(std::span<const std::size_t> permutation) {
  std::vector<bool> seen(permutation.size(), false);
  std::vector<std::size_t> cycles;
  for (std::size_t s = 0; s < permutation.size(); ++s) {
    if (seen[s]) continue;
    std::size_t len = 0;
    for (std::size_t k = s; !seen[k]; k = permutation[k]) {
      seen[k] = true;
      ++len;
    }
    cycles.push_back(len);
  }
  std::sort(cycles.rbegin(), cycles.rend());
  return cycles;
}

namespace {

struct StepMatch {
  std::vector<ComplexF> ordered;
  std::vector<std::size_t> index;  // tracked i -> position in candidate list
  double residual = 0;
  double gap = 0;
};

// Matches tracked values to candidates by nearest neighbour. Candidates that
// coincide form one group whose members are handed out in index order.
StepMatch match_step(const std::vector<ComplexF>& prev, const std::vector<ComplexF>& cand) {
  const std::size_t n = cand.size();
  double scale = 1.0;
  for (auto v : cand) scale = std::max(scale, std::abs(v));
  const double coincide = 1e-6 * scale;

  std::vector<std::size_t> group(n);
  std::iota(group.begin(), group.end(), 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (std::abs(cand[a] - cand[b]) <= coincide) {
        std::size_t ga = group[a], gb = group[b];
        for (auto& g : group)
          if (g == gb) g = ga;
      }

  StepMatch m;
  m.gap = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (group[a] != group[b]) m.gap = std::min(m.gap, std::abs(cand[a] - cand[b]));

  std::vector<std::vector<std::size_t>> claims(n);
  for (std::size_t i = 0; i < prev.size(); ++i) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < n; ++j)
      if (std::abs(cand[j] - prev[i]) < std::abs(cand[best] - prev[i])) best = j;
    const double d1 = std::abs(cand[best] - prev[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (group[j] == group[best]) continue;
      const double d2 = std::abs(cand[j] - prev[i]);
      if (d2 <= d1 * (1.0 + 1e-9) + 1e-300)
        throw NumericalError("ambiguous eigenvalue matching while encircling; increase --steps");
    }
    claims[group[best]].push_back(i);
    m.residual = std::max(m.residual, d1);
  }

  m.index.assign(prev.size(), 0);
  m.ordered.assign(prev.size(), ComplexF{});
  for (std::size_t g = 0; g < n; ++g) {
    std::vector<std::size_t> members;
    for (std::size_t j = 0; j < n; ++j)
      if (group[j] == g) members.push_back(j);
    if (members.size() != claims[g].size())
      throw NumericalError("eigenvalue tracking lost a branch while encircling; increase --steps");
    for (std::size_t k = 0; k < members.size(); ++k) {
      m.index[claims[g][k]] = members[k];
      m.ordered[claims[g][k]] = cand[members[k]];
    }
  }
  return m;
}

}  // namespace

PermutationReport encircle(const CMatrix& l0, const CMatrix& l1, double radius, int steps, int turns) {
  if (steps < 100) throw PreconditionError("encircling needs at least 100 steps");
  if (!(radius > 0)) throw PreconditionError("encircling radius must be positive");
  if (turns < 1) throw PreconditionError("encircling needs at least one turn");
  if (l0.size() != l1.size()) throw StructuralError("L0 and L1 differ in dimension");

  const std::size_t total = static_cast<std::size_t>(steps) * static_cast<std::size_t>(turns);
  std::vector<double> ts(total + 1);
  for (std::size_t s = 0; s <= total; ++s)
    ts[s] = 2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(steps);

  // The closing point reuses the starting spectrum so the loop closes exactly.
  std::vector<std::vector<ComplexF>> spectra(total + 1);
  parallel_for(total, [&](std::size_t s) {
    spectra[s] = eigenvalues(l0 + std::polar(radius, ts[s]) * l1);
  });
  spectra[total] = spectra[0];

  PermutationReport report;
  report.min_gap = std::numeric_limits<double>::infinity();
  std::vector<ComplexF> current = spectra[0];
  report.t.push_back(ts[0]);
  report.trace.push_back(current);
  std::vector<std::size_t> position(current.size());
  std::iota(position.begin(), position.end(), 0);
  for (std::size_t s = 1; s <= total; ++s) {
    StepMatch m = match_step(current, spectra[s]);
    report.tracking_residual = std::max(report.tracking_residual, m.residual);
    report.min_gap = std::min(report.min_gap, m.gap);
    current = std::move(m.ordered);
    position = std::move(m.index);
    report.t.push_back(ts[s]);
    report.trace.push_back(current);
  }
  if (!(report.tracking_residual < 0.5 * report.min_gap))
    throw NumericalError("tracking residual " + num(report.tracking_residual) + " exceeds half the eigenvalue gap " +
                         num(report.min_gap) + "; increase --steps or change --radius");

  report.permutation = position;
  std::vector<bool> hit(position.size(), false);
  for (auto p : position) hit[p] = true;
  if (std::find(hit.begin(), hit.end(), false) != hit.end())
    throw NumericalError("encircling did not produce a permutation");
  report.cycles = cycle_lengths(report.permutation);
  return report;
}

namespace {

// Dense complex table c[i][j] of omega^i eps^j.
struct Bivariate {
  std::vector<std::vector<ComplexF>> c;
  int deg_omega = 0;
  int deg_eps = 0;
};

Bivariate to_bivariate(const MultiPoly& f, std::string_view omega, std::string_view eps) {
  if (f.is_zero()) throw PreconditionError("amoeba of the zero polynomial");
  const auto& vars = f.vars();
  const std::size_t wi = vars.index(omega), ei = vars.index(eps);
  Bivariate b;
  b.deg_omega = f.degree(omega);
  b.deg_eps = f.degree(eps);
  if (b.deg_omega < 1 || b.deg_eps < 1) throw PreconditionError("amoeba needs a polynomial in both omega and eps");
  b.c.assign(static_cast<std::size_t>(b.deg_omega) + 1,
             std::vector<ComplexF>(static_cast<std::size_t>(b.deg_eps) + 1));
  for (const auto& [exps, coeff] : f.terms()) {
    for (std::size_t k = 0; k < exps.size(); ++k)
      if (k != wi && k != ei && exps[k] != 0)
        throw PreconditionError("amoeba polynomial still depends on '" + vars.names()[k] + "'");
    b.c[exps[wi]][exps[ei]] += coeff.to_complex();
  }
  return b;
}

// Coefficients in the solved-for variable at a fixed value of the other one.
std::vector<ComplexF> specialize(const Bivariate& b, AmoebaChart chart, ComplexF at) {
  const bool solve_omega = chart == AmoebaChart::Eps;
  const std::size_t deg = static_cast<std::size_t>(solve_omega ? b.deg_omega : b.deg_eps);
  std::vector<ComplexF> out(deg + 1);
  for (std::size_t i = 0; i < b.c.size(); ++i)
    for (std::size_t j = 0; j < b.c[i].size(); ++j) {
      if (b.c[i][j] == ComplexF{}) continue;
      if (solve_omega) out[i] += b.c[i][j] * std::pow(at, static_cast<int>(j));
      else out[j] += b.c[i][j] * std::pow(at, static_cast<int>(i));
    }
  while (out.size() > 1 && out.back() == ComplexF{}) out.pop_back();
  return out;
}

}  // namespace

AmoebaCloud amoeba_sample(const MultiPoly& f, const AmoebaGrid& grid, std::uint64_t seed, std::string_view omega,
                          std::string_view eps) {
  if (grid.n_moduli < 1 || grid.n_phases < 1) throw PreconditionError("amoeba grid must be non-empty");
  const Bivariate b = to_bivariate(f, omega, eps);
  const auto moduli = log_grid(grid.modulus_min, grid.modulus_max, grid.n_moduli);

  std::vector<AmoebaChart> charts{AmoebaChart::Eps};
  if (grid.omega_chart) charts.push_back(AmoebaChart::Omega);
  const std::size_t per_chart = moduli.size() * static_cast<std::size_t>(grid.n_phases);
  const std::size_t tasks = per_chart * charts.size();

  std::vector<std::vector<AmoebaPoint>> found(tasks);
  std::vector<char> failed(tasks, 0);
  parallel_for(tasks, [&](std::size_t task) {
    const AmoebaChart chart = charts[task / per_chart];
    const std::size_t local = task % per_chart;
    const double r = moduli[local / static_cast<std::size_t>(grid.n_phases)];
    const auto p = static_cast<double>(local % static_cast<std::size_t>(grid.n_phases));
    // Half-step phase offset keeps the grid off the real axis.
    const ComplexF at = std::polar(r, 2.0 * std::numbers::pi * (p + 0.5) / grid.n_phases);
    const auto coeffs = specialize(b, chart, at);
    if (coeffs.size() < 2) return;
    std::vector<ComplexF> roots;
    try {
      roots = roots_aberth(coeffs);
    } catch (const NumericalError&) {
      failed[task] = 1;
      return;
    }
    for (const auto& z : roots) {
      if (!(std::abs(z) > kAmoebaCutoff) || !std::isfinite(z.real()) || !std::isfinite(z.imag())) continue;
      AmoebaPoint pt;
      pt.chart = chart;
      if (chart == AmoebaChart::Eps) {
        pt.logeps = std::log10(r);
        pt.logmag = std::log10(std::abs(z));
      } else {
        pt.logeps = std::log10(std::abs(z));
        pt.logmag = std::log10(r);
      }
      found[task].push_back(pt);
    }
  });

  AmoebaCloud cloud;
  cloud.grid = grid;
  cloud.seed = seed;
  for (std::size_t t = 0; t < tasks; ++t) {
    cloud.points.insert(cloud.points.end(), found[t].begin(), found[t].end());
    cloud.skipped += failed[t] ? 1 : 0;
  }
  return cloud;
}

std::vector<TentacleFit> fit_tentacles(const AmoebaCloud& cloud, std::span<const TentacleDirection> expected,
                                       const TentacleFitOptions& options) {
  if (cloud.points.empty()) throw PreconditionError("empty amoeba cloud");
  auto [lo, hi] = std::minmax_element(cloud.points.begin(), cloud.points.end(),
                                      [](const AmoebaPoint& a, const AmoebaPoint& b) { return a.logeps < b.logeps; });
  if (hi->logeps - lo->logeps < 2.0) throw PreconditionError("amoeba cloud must span at least two decades in |eps|");

  const double tol = options.angle_tolerance_deg * std::numbers::pi / 180.0;
  std::vector<std::vector<const AmoebaPoint*>> members(expected.size());
  for (const auto& pt : cloud.points) {
    const double norm = std::hypot(pt.logmag, pt.logeps);
    if (norm == 0) continue;
    std::size_t best = expected.size();
    double best_angle = tol;
    for (std::size_t k = 0; k < expected.size(); ++k) {
      const double dx = static_cast<double>(expected[k].dx), dy = static_cast<double>(expected[k].dy);
      const double cosang = (pt.logmag * dx + pt.logeps * dy) / (norm * std::hypot(dx, dy));
      const double angle = std::acos(std::clamp(cosang, -1.0, 1.0));
      if (angle <= best_angle) {
        best_angle = angle;
        best = k;
      }
    }
    if (best < expected.size()) members[best].push_back(&pt);
  }

  std::vector<TentacleFit> fits;
  for (std::size_t k = 0; k < expected.size(); ++k) {
    TentacleFit fit;
    fit.direction = expected[k];
    const bool horizontal = expected[k].kind == TentacleKind::Horizontal;
    // Asymptotic decade along the escape coordinate.
    auto escape = [&](const AmoebaPoint* p) { return horizontal ? p->logmag : p->logeps; };
    double deepest = std::numeric_limits<double>::infinity();
    for (auto* p : members[k]) deepest = std::min(deepest, escape(p));
    std::vector<double> xs, ys;
    for (auto* p : members[k]) {
      if (escape(p) > deepest + 1.0) continue;
      if (expected[k].kind == TentacleKind::Vertical) {
        xs.push_back(p->logeps);
        ys.push_back(p->logmag);
      } else {
        xs.push_back(p->logmag);
        ys.push_back(p->logeps);
      }
    }
    fit.support = xs.size();
    if (static_cast<int>(xs.size()) >= options.min_support) {
      const double x0 = *std::min_element(xs.begin(), xs.end());
      const double x1 = *std::max_element(xs.begin(), xs.end());
      if (x1 > x0) fit.slope = fit_line(xs, ys).slope;
    }
    fits.push_back(fit);
  }
  return fits;
}

void write_scaling_csv(std::ostream& out, const ScalingResult& result) {
  out << "epsilon,re,im,logeps,logmag\n";
  for (const auto& s : result.samples)
    out << num(s.eps) << ',' << num(s.value.real()) << ',' << num(s.value.imag()) << ',' << num(s.logeps) << ','
        << num(s.logmag) << '\n';
}

void write_amoeba_csv(std::ostream& out, const AmoebaCloud& cloud) {
  out << "logeps,logmag\n";
  for (const auto& p : cloud.points) out << num(p.logeps) << ',' << num(p.logmag) << '\n';
}

void write_encircle_csv(std::ostream& out, const PermutationReport& report) {
  out << "t,index,re,im\n";
  for (std::size_t s = 0; s < report.trace.size(); ++s)
    for (std::size_t i = 0; i < report.trace[s].size(); ++i)
      out << num(report.t[s]) << ',' << i << ',' << num(report.trace[s][i].real()) << ','
          << num(report.trace[s][i].imag()) << '\n';
}

}  // namespace lep
