#pragma once

#include <array>
#include <initializer_list>
#include <cstddef>

namespace wbkt {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Ordered vertex list with fixed capacity; clipping a quadrilateral against
/// an axis-aligned rectangle yields at most 8 vertices.
class Polygon {
 public:
  static constexpr std::size_t capacity = 16;

  Polygon() = default;
  Polygon(std::initializer_list<Point> pts);

  std::size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }
  const Point& operator[](std::size_t i) const { return v_[i]; }
  Point& operator[](std::size_t i) { return v_[i]; }
  void push_back(Point p);
  void clear() { n_ = 0; }

  const Point* begin() const { return v_.data(); }
  const Point* end() const { return v_.data() + n_; }

 private:
  std::array<Point, capacity> v_{};
  std::size_t n_ = 0;
};

struct Rect {
  double x0 = 0.0;
  double x1 = 0.0;
  double y0 = 0.0;
  double y1 = 0.0;
};

// Sutherland-Hodgman against the rectangle (convex window); the subject may be
// any simple polygon.  Empty intersection gives an empty polygon.
Polygon clip_convex(const Polygon& poly, const Rect& rect);

struct AreaCentroid {
  double area = 0.0;
  Point centroid{};
};

// Shoelace area (positive for counter-clockwise) and centroid.  Coordinates are
// taken relative to the first vertex, so a small polygon far from the origin
// keeps its digits.  Zero area gives the vertex mean as centroid.
AreaCentroid area_centroid(const Polygon& poly);

}  // namespace wbkt
