#pragma once

#include "ocs/rational.hpp"

#include <vector>

namespace ocs {

struct Point {
  Rational x;
  Rational y;

  bool operator==(const Point& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Point& o) const { return !(*this == o); }
};

// Vertices in order, not closed (the last edge wraps to the first vertex).
using Polygon = std::vector<Point>;

// Shoelace sum / 2; positive for counterclockwise orientation. Exact.
Rational signed_area(const Polygon& p);
Rational area(const Polygon& p);

// True for convex vertex chains in either orientation; collinear runs and
// repeated vertices are tolerated.
bool is_convex(const Polygon& p);

// Counterclockwise copy.
Polygon oriented_ccw(const Polygon& p);

// Intersection of a convex subject with a convex clip window, one pass of
// half-plane clipping per clip edge, all arithmetic exact. The result may be
// empty or degenerate (zero area); callers filter by area.
Polygon clip_convex(const Polygon& subject, const Polygon& clip);

// Consecutive-duplicate-free copy (closing duplicate included).
Polygon dedupe(const Polygon& p);

Polygon unit_square();

}  // namespace ocs
