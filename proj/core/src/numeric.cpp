#include "lep/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace lep {

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (n_ != o.n_) throw StructuralError("matrix dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

CMatrix operator*(ComplexF s, CMatrix m) {
  for (auto& v : m.data_) v *= s;
  return m;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.n_ != b.n_) throw StructuralError("matrix dimension mismatch");
  const std::size_t n = a.n_;
  CMatrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      const ComplexF v = a(r, k);
      if (v == ComplexF{}) continue;
      for (std::size_t c = 0; c < n; ++c) out(r, c) += v * b(k, c);
    }
  return out;
}

double CMatrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t r = 0; r < n_; ++r) {
    double row = 0.0;
    for (std::size_t c = 0; c < n_; ++c) row += std::abs((*this)(r, c));
    best = std::max(best, row);
  }
  return best;
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = 1.0;
  return m;
}

CMatrix to_numeric(const PolyMatrix& m) {
  if (!m.is_square()) throw StructuralError("numeric conversion needs a square matrix");
  if (!m.is_constant()) throw PreconditionError("matrix still depends on unbound parameters");
  CMatrix out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).constant_term().to_complex();
  return out;
}

namespace {

constexpr double kUnit = std::numeric_limits<double>::epsilon() / 2;

struct Eval {
  ComplexF p;
  ComplexF dp;
  double scale;  // sum |a_k| |z|^k
};

Eval horner(std::span<const ComplexF> a, ComplexF z) {
  ComplexF p = a.back(), dp = 0.0;
  double scale = std::abs(a.back());
  const double az = std::abs(z);
  for (std::size_t k = a.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + a[k];
    scale = scale * az + std::abs(a[k]);
  }
  return {p, dp, scale};
}

// Starting points on circles whose radii come from the upper convex hull of
// (k, log|a_k|), so roots of very different magnitudes start nearby.
std::vector<ComplexF> initial_guesses(std::span<const ComplexF> a) {
  const std::size_t n = a.size() - 1;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t k = 0; k <= n; ++k)
    if (a[k] != ComplexF{}) pts.emplace_back(static_cast<double>(k), std::log(std::abs(a[k])));
  std::vector<std::pair<double, double>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& o = hull[hull.size() - 2];
      const auto& q = hull.back();
      double cr = (q.first - o.first) * (p.second - o.second) - (q.second - o.second) * (p.first - o.first);
      if (cr >= 0) hull.pop_back();
      else break;
    }
    hull.push_back(p);
  }
  std::vector<ComplexF> z;
  const double sigma = 0.7;
  for (std::size_t s = 1; s < hull.size(); ++s) {
    const auto lo = static_cast<std::size_t>(hull[s - 1].first);
    const auto hi = static_cast<std::size_t>(hull[s].first);
    const std::size_t count = hi - lo;
    const double radius = std::exp((hull[s - 1].second - hull[s].second) / static_cast<double>(count));
    for (std::size_t j = 0; j < count; ++j) {
      double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(count) +
                     2.0 * std::numbers::pi * static_cast<double>(lo) / static_cast<double>(n) + sigma;
      z.push_back(std::polar(radius, angle));
    }
  }
  return z;
}

double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t j = 1; j <= k; ++j) r = r * static_cast<double>(n - k + j) / static_cast<double>(j);
  return r;
}

// Replaces clusters that are numerically a multiple root by their centre.
void polish_clusters(std::span<const ComplexF> a, std::span<const double> abs_err, std::vector<ComplexF>& z) {
  const std::size_t m = z.size();
  std::vector<std::size_t> label(m);
  std::iota(label.begin(), label.end(), 0);
  auto find = [&](std::size_t x) {
    while (label[x] != x) x = label[x] = label[label[x]];
    return x;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      double reach = 1e-3 * std::max(std::abs(z[i]), std::abs(z[j]));
      if (std::abs(z[i] - z[j]) <= reach) label[find(i)] = find(j);
    }

  std::vector<std::vector<std::size_t>> groups(m);
  for (std::size_t i = 0; i < m; ++i) groups[find(i)].push_back(i);

  const std::size_t n = a.size() - 1;
  const double gamma = 16.0 * static_cast<double>(n + 1);
  for (const auto& g : groups) {
    const std::size_t k = g.size();
    if (k < 2) continue;
    ComplexF c = 0.0;
    for (auto idx : g) c += z[idx];
    c /= static_cast<double>(k);
    double radius = 0.0;
    for (auto idx : g) radius = std::max(radius, std::abs(z[idx] - c));

    // Taylor coefficients t_j of p at c by repeated synthetic division.
    auto taylor_at = [&](ComplexF at) {
      std::vector<ComplexF> work(a.begin(), a.end());
      std::vector<ComplexF> t(k + 1);
      for (std::size_t j = 0; j <= k && j <= n; ++j) {
        for (std::size_t d = n; d-- > j;) work[d] += at * work[d + 1];
        t[j] = work[j];
      }
      return t;
    };
    // A k-fold root is a simple root of p^(k-1); Newton on it from the mean.
    ComplexF centre = c;
    for (int it = 0; it < 8 && k <= n; ++it) {
      auto t = taylor_at(centre);
      if (t[k] == ComplexF{}) break;
      ComplexF step = t[k - 1] / (static_cast<double>(k) * t[k]);
      centre -= step;
      if (std::abs(step) <= 4.0 * kUnit * std::abs(centre)) break;
    }
    if (std::abs(centre - c) <= radius) c = centre;
    auto taylor = taylor_at(c);

    bool multiple = true;
    const double ac = std::abs(c);
    for (std::size_t j = 0; j < k && multiple; ++j) {
      double bound = 0.0;
      for (std::size_t d = j; d <= n; ++d) {
        double w = binomial(d, j) * std::pow(ac, static_cast<double>(d - j));
        bound += w * (kUnit * std::abs(a[d]) + abs_err[d]);
      }
      multiple = std::abs(taylor[j]) <= gamma * bound;
    }
    if (!multiple) continue;
    for (auto idx : g) z[idx] = c;
  }
}

}  // namespace

double backward_error(std::span<const ComplexF> coeffs, ComplexF z) {
  Eval e = horner(coeffs, z);
  return e.scale > 0 ? std::abs(e.p) / e.scale : 0.0;
}

std::vector<ComplexF> roots_aberth(std::span<const ComplexF> coeffs, const AberthOptions& options) {
  if (coeffs.size() < 2) throw PreconditionError("root finding needs degree >= 1");
  if (coeffs.back() == ComplexF{}) throw PreconditionError("leading coefficient must be nonzero");
  for (const auto& c : coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw PreconditionError("non-finite coefficient");

  std::size_t zeros = 0;
  while (coeffs[zeros] == ComplexF{}) ++zeros;
  std::vector<ComplexF> roots(zeros, ComplexF{});
  const std::size_t n = coeffs.size() - 1 - zeros;
  if (n == 0) return roots;

  std::vector<ComplexF> a(coeffs.begin() + static_cast<std::ptrdiff_t>(zeros), coeffs.end());
  std::vector<double> abs_err(a.size(), 0.0);
  const ComplexF lead = a.back();
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (k + zeros < options.coefficient_error.size())
      abs_err[k] = options.coefficient_error[k + zeros] / std::abs(lead);
    a[k] /= lead;
  }
  if (n == 1) {
    roots.push_back(-a[0]);
    return roots;
  }

  std::vector<ComplexF> z = initial_guesses(a);
  std::vector<bool> done(n, false);
  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    bool all_done = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      Eval e = horner(a, z[i]);
      if (std::abs(e.p) <= 4.0 * kUnit * e.scale) {
        done[i] = true;
        continue;
      }
      all_done = false;
      ComplexF ratio = e.dp == ComplexF{} ? ComplexF(1e-3 * (1.0 + std::abs(z[i]))) : e.p / e.dp;
      ComplexF sum = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i && z[i] != z[j]) sum += 1.0 / (z[i] - z[j]);
      ComplexF w = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = ratio;
      z[i] -= w;
      if (std::abs(w) <= 4.0 * kUnit * std::abs(z[i])) done[i] = true;
    }
    if (all_done) break;
  }

  double worst = 0.0;
  for (const auto& r : z) worst = std::max(worst, backward_error(a, r));
  if (!(worst < options.tolerance)) {
    throw RootFindingError("Aberth iteration did not converge (backward error " + std::to_string(worst) + ")",
                           z, worst);
  }
  polish_clusters(a, abs_err, z);
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

std::vector<ComplexF> faddeev_leverrier(const CMatrix& a) {
  const std::size_t n = a.size();
  std::vector<ComplexF> c(n + 1);
  c[n] = 1.0;
  CMatrix m(n);
  for (std::size_t k = 1; k <= n; ++k) {
    CMatrix next = a * m;
    for (std::size_t d = 0; d < n; ++d) next(d, d) += c[n - k + 1];
    m = std::move(next);
    CMatrix am = a * m;
    ComplexF trace = 0.0;
    for (std::size_t d = 0; d < n; ++d) trace += am(d, d);
    c[n - k] = -trace / static_cast<double>(k);
  }
  return c;
}

std::vector<ComplexF> eigenvalues(const CMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) throw PreconditionError("eigenvalues of an empty matrix");
  if (n > 32) throw PreconditionError("eigenvalue solver supports dimension <= 32");
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (!std::isfinite(a(r, c).real()) || !std::isfinite(a(r, c).imag()))
        throw PreconditionError("matrix has non-finite entries");

  auto coeffs = faddeev_leverrier(a);
  AberthOptions opts;
  const double norm = a.norm_inf();
  opts.coefficient_error.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    opts.coefficient_error[k] =
        8.0 * static_cast<double>(n) * kUnit * binomial(n, k) * std::pow(norm, static_cast<double>(n - k));
  return roots_aberth(coeffs, opts);
}

}  // namespace lep
