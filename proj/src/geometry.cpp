#include "ocs/geometry.hpp"

#include <algorithm>

namespace ocs {

Rational signed_area(const Polygon& p) {
  Rational twice = 0;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = p[i];
    const Point& b = p[(i + 1) % n];
    twice += a.x * b.y - b.x * a.y;
  }
  return twice / 2;
}

Rational area(const Polygon& p) {
  Rational s = signed_area(p);
  return s < 0 ? Rational(-s) : s;
}

namespace {

// z component of (b - a) x (c - b)
Rational turn(const Point& a, const Point& b, const Point& c) {
  return (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
}

}  // namespace

bool is_convex(const Polygon& p) {
  if (p.size() < 3) return false;
  int sign = 0;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Rational t = turn(p[i], p[(i + 1) % n], p[(i + 2) % n]);
    if (t == 0) continue;  // collinear run
    const int s = t > 0 ? 1 : -1;
    if (sign == 0) {
      sign = s;
    } else if (s != sign) {
      return false;
    }
  }
  return sign != 0;  // all vertices collinear -> degenerate, not a convex region
}

Polygon oriented_ccw(const Polygon& p) {
  if (signed_area(p) >= 0) return p;
  Polygon r(p.rbegin(), p.rend());
  return r;
}

Polygon dedupe(const Polygon& p) {
  Polygon out;
  for (const Point& pt : p) {
    if (out.empty() || !(out.back() == pt)) out.push_back(pt);
  }
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

Polygon clip_convex(const Polygon& subject, const Polygon& clip) {
  Polygon output = dedupe(subject);
  const Polygon window = dedupe(oriented_ccw(clip));
  const std::size_t m = window.size();
  for (std::size_t e = 0; e < m && !output.empty(); ++e) {
    const Point& a = window[e];
    const Point& b = window[(e + 1) % m];
    // inside = left of or on the directed edge a -> b
    auto side = [&](const Point& p) {
      return (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    };
    const Polygon input = std::move(output);
    output.clear();
    const std::size_t n = input.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point& prev = input[(i + n - 1) % n];
      const Point& cur = input[i];
      const Rational sp = side(prev);
      const Rational sc = side(cur);
      if (sc >= 0) {
        if (sp < 0) {
          const Rational t = sp / (sp - sc);
          output.push_back(Point{prev.x + t * (cur.x - prev.x),
                                 prev.y + t * (cur.y - prev.y)});
        }
        output.push_back(cur);
      } else if (sp >= 0) {
        const Rational t = sp / (sp - sc);
        output.push_back(
            Point{prev.x + t * (cur.x - prev.x), prev.y + t * (cur.y - prev.y)});
      }
    }
    output = dedupe(output);
  }
  return output;
}

Polygon unit_square() {
  return Polygon{{Rational(0), Rational(0)},
                 {Rational(1), Rational(0)},
                 {Rational(1), Rational(1)},
                 {Rational(0), Rational(1)}};
}

}  // namespace ocs
