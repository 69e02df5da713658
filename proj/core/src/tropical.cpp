#include "lep/tropical.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "lep/error.hpp"

namespace lep {

int EPReport::total_multiplicity() const {
  return std::accumulate(entries.begin(), entries.end(), 0,
                         [](int acc, const EPEntry& e) { return acc + e.multiplicity; });
}

Rational TropicalFunction::operator()(const Rational& w) const {
  if (pieces.empty()) throw PreconditionError("empty tropical function");
  std::optional<Rational> best;
  for (const auto& p : pieces) {
    Rational v = p.intercept + Rational(p.slope) * w;
    if (!best || v < *best) best = v;
  }
  return *best;
}

std::string TentacleDirection::str() const {
  switch (kind) {
    case TentacleKind::Horizontal: return "horizontal";
    case TentacleKind::Vertical: return "vertical";
    case TentacleKind::Sloped: return slope.str();
  }
  return slope.str();
}

namespace {

// omega-degree -> lowest eps-exponent of its coefficient.
std::map<int, int> coefficient_valuations(const MultiPoly& f, std::string_view omega, std::string_view eps) {
  if (f.is_zero()) throw PreconditionError("Newton polygon of the zero polynomial");
  const Vars& vars = f.vars();
  const std::size_t wi = vars.index(omega), ei = vars.index(eps);
  std::map<int, int> val;
  for (const auto& [e, c] : f.terms()) {
    for (std::size_t k = 0; k < e.size(); ++k)
      if (k != wi && k != ei && e[k] != 0)
        throw PreconditionError("variable '" + vars[k] + "' must be substituted before building a Newton polygon");
    const int i = static_cast<int>(e[wi]), j = static_cast<int>(e[ei]);
    auto [it, inserted] = val.try_emplace(i, j);
    if (!inserted) it->second = std::min(it->second, j);
  }
  return val;
}

long cross(const NewtonPoint& o, const NewtonPoint& a, const NewtonPoint& b) {
  return static_cast<long>(a.i - o.i) * (b.j - o.j) - static_cast<long>(a.j - o.j) * (b.i - o.i);
}

}  // namespace

std::vector<NewtonPoint> newton_points(const MultiPoly& f, std::string_view omega, std::string_view eps) {
  std::vector<NewtonPoint> pts;
  for (const auto& [i, j] : coefficient_valuations(f, omega, eps)) pts.push_back({i, j});
  return pts;
}

NewtonPolygon lower_hull(std::vector<NewtonPoint> points) {
  if (points.empty()) throw PreconditionError("lower hull of an empty point set");
  std::sort(points.begin(), points.end());
  // Keep the lowest point per omega-degree.
  std::vector<NewtonPoint> pts;
  for (const auto& p : points)
    if (pts.empty() || pts.back().i != p.i) pts.push_back(p);

  std::vector<NewtonPoint> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
    hull.push_back(p);
  }

  NewtonPolygon poly;
  poly.points = points;
  if (hull.front().i > 0) poly.segments.push_back({hull.front(), hull.front(), std::nullopt, 0});
  for (std::size_t k = 1; k < hull.size(); ++k) {
    const auto& a = hull[k - 1];
    const auto& b = hull[k];
    poly.segments.push_back({a, b, Rational(b.j - a.j) / Rational(b.i - a.i), b.i - a.i});
  }
  return poly;
}

NewtonPolygon newton_polygon(const MultiPoly& f, std::string_view omega, std::string_view eps) {
  return lower_hull(newton_points(f, omega, eps));
}

EPReport ep_orders(const NewtonPolygon& polygon) {
  EPReport report;
  for (const auto& s : polygon.segments) {
    if (s.vertical())
      report.entries.push_back({Valuation::infinity(), s.start.i});
    else
      report.entries.push_back({Valuation::finite(-*s.slope), s.hspan});
  }
  if (report.entries.empty() && !polygon.points.empty() && polygon.points.front().i > 0)
    report.entries.push_back({Valuation::infinity(), polygon.points.front().i});
  return report;
}

TropicalFunction tropicalize(const MultiPoly& f, std::string_view omega, std::string_view eps) {
  TropicalFunction t;
  for (const auto& [i, j] : coefficient_valuations(f, omega, eps)) t.pieces.push_back({i, Rational(j)});
  return t;
}

std::vector<TropicalRoot> tropical_roots(const TropicalFunction& t) {
  if (t.pieces.size() < 2) throw PreconditionError("a single-piece tropical function has no roots");
  std::vector<Rational> candidates;
  for (std::size_t a = 0; a < t.pieces.size(); ++a)
    for (std::size_t b = a + 1; b < t.pieces.size(); ++b) {
      const auto& pa = t.pieces[a];
      const auto& pb = t.pieces[b];
      if (pa.slope == pb.slope) continue;
      candidates.push_back((pa.intercept - pb.intercept) / Rational(pb.slope - pa.slope));
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<TropicalRoot> roots;
  for (const auto& w : candidates) {
    const Rational m = t(w);
    int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
    int achieving = 0;
    for (const auto& p : t.pieces) {
      if (p.intercept + Rational(p.slope) * w != m) continue;
      ++achieving;
      lo = std::min(lo, p.slope);
      hi = std::max(hi, p.slope);
    }
    if (achieving >= 2 && hi > lo) roots.push_back({w, hi - lo});
  }
  return roots;
}

std::vector<TentacleDirection> tentacle_directions(const NewtonPolygon& polygon) {
  std::vector<TentacleDirection> out;
  for (const auto& s : polygon.segments) {
    if (s.vertical()) {
      out.push_back({TentacleKind::Horizontal, Rational(0), -1, 0});
      continue;
    }
    const Rational v = -*s.slope;
    if (v.is_zero()) {
      out.push_back({TentacleKind::Vertical, Rational(0), 0, -1});
      continue;
    }
    const long p = v.num().get_si(), q = v.den().get_si();
    out.push_back({TentacleKind::Sloped, Rational(1) / v, -p, -q});
  }
  return out;
}

nlohmann::json polygon_to_json(const NewtonPolygon& polygon) {
  using nlohmann::json;
  json points = json::array();
  for (const auto& p : polygon.points) points.push_back({p.i, p.j});
  json segments = json::array();
  for (const auto& s : polygon.segments)
    segments.push_back({{"start", {s.start.i, s.start.j}},
                        {"end", {s.end.i, s.end.j}},
                        {"slope", s.vertical() ? std::string("vertical") : s.slope->str()},
                        {"hspan", s.hspan}});
  json report = json::array();
  for (const auto& e : ep_orders(polygon).entries)
    report.push_back({{"valuation", e.valuation.str()}, {"multiplicity", e.multiplicity}});
  json tentacles = json::array();
  for (const auto& d : tentacle_directions(polygon))
    tentacles.push_back({{"direction", {d.dx, d.dy}}, {"slope", d.str()}});
  return {{"schema", 1},
          {"points", std::move(points)},
          {"segments", std::move(segments)},
          {"report", std::move(report)},
          {"tentacles", std::move(tentacles)}};
}

}  // namespace lep
