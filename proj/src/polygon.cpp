#include "wbkt/polygon.hpp"

#include <cassert>
#include <cmath>

namespace wbkt {

Polygon::Polygon(std::initializer_list<Point> pts) {
  for (const Point& p : pts) push_back(p);
}

void Polygon::push_back(Point p) {
  assert(n_ < capacity);
  v_[n_++] = p;
}

namespace {

// Keeps the part of `in` where side(p) >= 0; side is affine along edges.
template <class Side, class Cross>
Polygon clip_half_plane(const Polygon& in, Side side, Cross cross) {
  Polygon out;
  const std::size_t n = in.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = in[i];
    const Point& b = in[(i + 1) % n];
    const double sa = side(a);
    const double sb = side(b);
    if (sa >= 0.0) out.push_back(a);
    if ((sa >= 0.0) != (sb >= 0.0)) out.push_back(cross(a, b));
  }
  return out;
}

}  // namespace

Polygon clip_convex(const Polygon& poly, const Rect& r) {
  if (poly.empty()) return poly;
  double bx0 = poly[0].x, bx1 = bx0, by0 = poly[0].y, by1 = by0;
  for (const Point& q : poly) {
    bx0 = std::fmin(bx0, q.x);
    bx1 = std::fmax(bx1, q.x);
    by0 = std::fmin(by0, q.y);
    by1 = std::fmax(by1, q.y);
  }
  // A half-plane holding every vertex leaves the polygon unchanged, so it is skipped.
  Polygon p = poly;
  // Intersection coordinates are snapped to the clip line so pieces tile exactly.
  if (bx0 < r.x0)
    p = clip_half_plane(
        p, [&](Point q) { return q.x - r.x0; },
        [&](Point a, Point b) { return Point{r.x0, a.y + (b.y - a.y) * (r.x0 - a.x) / (b.x - a.x)}; });
  if (p.empty()) return p;
  if (bx1 > r.x1)
    p = clip_half_plane(
        p, [&](Point q) { return r.x1 - q.x; },
        [&](Point a, Point b) { return Point{r.x1, a.y + (b.y - a.y) * (r.x1 - a.x) / (b.x - a.x)}; });
  if (p.empty()) return p;
  if (by0 < r.y0)
    p = clip_half_plane(
        p, [&](Point q) { return q.y - r.y0; },
        [&](Point a, Point b) { return Point{a.x + (b.x - a.x) * (r.y0 - a.y) / (b.y - a.y), r.y0}; });
  if (p.empty()) return p;
  if (by1 > r.y1)
    p = clip_half_plane(
        p, [&](Point q) { return r.y1 - q.y; },
        [&](Point a, Point b) { return Point{a.x + (b.x - a.x) * (r.y1 - a.y) / (b.y - a.y), r.y1}; });
  return p;
}

AreaCentroid area_centroid(const Polygon& poly) {
  AreaCentroid out;
  const std::size_t n = poly.size();
  if (n == 0) return out;
  const Point o = poly[0];
  double a2 = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double x0 = poly[i].x - o.x, y0 = poly[i].y - o.y;
    const double x1 = poly[i + 1].x - o.x, y1 = poly[i + 1].y - o.y;
    const double cr = x0 * y1 - x1 * y0;
    a2 += cr;
    cx += (x0 + x1) * cr;
    cy += (y0 + y1) * cr;
  }
  if (a2 == 0.0) {
    double mx = 0.0, my = 0.0;
    for (const Point& p : poly) {
      mx += p.x;
      my += p.y;
    }
    out.centroid = {mx / static_cast<double>(n), my / static_cast<double>(n)};
    return out;
  }
  out.area = 0.5 * a2;
  out.centroid = {o.x + cx / (3.0 * a2), o.y + cy / (3.0 * a2)};
  return out;
}

}  // namespace wbkt
