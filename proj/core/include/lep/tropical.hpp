#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "lep/poly.hpp"

namespace lep {

// (omega-degree i, eps-valuation of the coefficient of omega^i).
struct NewtonPoint {
  int i = 0;
  int j = 0;
  friend auto operator<=>(const NewtonPoint&, const NewtonPoint&) = default;
};

// Lower-hull edge. A vertical edge carries no slope: it marks roots that
// stay identically zero and only ever appears first, with hspan 0.
struct Segment {
  NewtonPoint start;
  NewtonPoint end;
  std::optional<Rational> slope;
  int hspan = 0;
  bool vertical() const { return !slope.has_value(); }
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct NewtonPolygon {
  std::vector<NewtonPoint> points;
  std::vector<Segment> segments;
};

// Puiseux valuation; an empty value means +infinity (identically zero root).
struct Valuation {
  std::optional<Rational> value;
  static Valuation infinity() { return {}; }
  static Valuation finite(Rational v) { return {std::move(v)}; }
  bool is_infinite() const { return !value.has_value(); }
  std::string str() const { return value ? value->str() : "inf"; }
  friend bool operator==(const Valuation&, const Valuation&) = default;
};

struct EPEntry {
  Valuation valuation;
  int multiplicity = 0;
  friend bool operator==(const EPEntry&, const EPEntry&) = default;
};

struct EPReport {
  std::vector<EPEntry> entries;
  int total_multiplicity() const;
};

// w -> min_k { intercept_k + slope_k * w }.
struct TropicalPiece {
  int slope = 0;
  Rational intercept;
};

struct TropicalFunction {
  std::vector<TropicalPiece> pieces;
  Rational operator()(const Rational& w) const;
};

struct TropicalRoot {
  Rational point;
  int multiplicity = 0;
  friend bool operator==(const TropicalRoot&, const TropicalRoot&) = default;
};

// Amoeba tentacles in the frame X = log|omega| (horizontal), Y = log|eps|
// (vertical). Every tentacle escapes towards Y -> -infinity except the
// horizontal one (identically zero roots), which escapes along X -> -infinity.
enum class TentacleKind { Sloped, Horizontal, Vertical };

struct TentacleDirection {
  TentacleKind kind = TentacleKind::Sloped;
  Rational slope;  // dY/dX, meaningful for Sloped only
  long dx = 0;     // integer direction vector
  long dy = 0;
  std::string str() const;
  friend bool operator==(const TentacleDirection&, const TentacleDirection&) = default;
};

// One point per nonzero omega-coefficient. All variables other than omega and
// eps must already be substituted.
std::vector<NewtonPoint> newton_points(const MultiPoly& f, std::string_view omega = kOmega,
                                       std::string_view eps = kEps);

// Lower convex hull by monotone chain; collinear points merge into one
// segment. Prepends a vertical segment when the smallest omega-degree is > 0.
NewtonPolygon lower_hull(std::vector<NewtonPoint> points);

NewtonPolygon newton_polygon(const MultiPoly& f, std::string_view omega = kOmega,
                             std::string_view eps = kEps);

// (infinity, smallest omega-degree) for a vertical segment, then
// (-slope, hspan) for every other segment in hull order.
EPReport ep_orders(const NewtonPolygon& polygon);

TropicalFunction tropicalize(const MultiPoly& f, std::string_view omega = kOmega,
                             std::string_view eps = kEps);

// Breakpoints of the tropical function with multiplicity = jump in the
// achieving slope, ascending. Found by testing every pairwise intersection.
std::vector<TropicalRoot> tropical_roots(const TropicalFunction& t);

std::vector<TentacleDirection> tentacle_directions(const NewtonPolygon& polygon);

// Schema-1 JSON: points, segments ("p/q" or "vertical"), report ("p/q" or
// "inf") and tentacles.
nlohmann::json polygon_to_json(const NewtonPolygon& polygon);

}  // namespace lep
