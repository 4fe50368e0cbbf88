#include <cmath>
#include <random>

#include "doctest.h"
#include "wbkt/polygon.hpp"

using namespace wbkt;
using doctest::Approx;

TEST_CASE("clip and centroid examples") {
  const Polygon square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const AreaCentroid self = area_centroid(clip_convex(square, {0, 1, 0, 1}));
  CHECK(self.area == Approx(1.0));
  CHECK(self.centroid.x == Approx(0.5));
  CHECK(self.centroid.y == Approx(0.5));

  const AreaCentroid right = area_centroid(clip_convex(square, {0.5, 2, -1, 2}));
  CHECK(right.area == Approx(0.5));
  CHECK(right.centroid.x == Approx(0.75));
  CHECK(right.centroid.y == Approx(0.5));

  const AreaCentroid tri = area_centroid(Polygon{{0, 0}, {1, 0}, {0, 1}});
  CHECK(tri.area == Approx(0.5));
  CHECK(tri.centroid.x == Approx(1.0 / 3));
  CHECK(tri.centroid.y == Approx(1.0 / 3));
}

TEST_CASE("disjoint clip is empty") {
  const Polygon square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const Polygon out = clip_convex(square, {2, 3, 0, 1});
  CHECK(area_centroid(out).area == 0.0);
}

TEST_CASE("clockwise polygons have negative area") {
  CHECK(area_centroid(Polygon{{0, 0}, {0, 1}, {1, 1}, {1, 0}}).area == Approx(-1.0));
}

TEST_CASE("small polygons far from the origin keep their centroid") {
  const double x0 = 1e6, y0 = -3e5, h = 1e-4;
  const AreaCentroid ac = area_centroid(Polygon{{x0, y0}, {x0 + h, y0}, {x0 + h, y0 + h}, {x0, y0 + h}});
  CHECK(ac.area == Approx(h * h).epsilon(1e-6));
  CHECK(std::fabs(ac.centroid.x - (x0 + h / 2)) <= 1e-9);
}

TEST_CASE("property: quadrant clips partition a random convex quadrilateral") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.05, 0.45);
  for (int trial = 0; trial < 500; ++trial) {
    // Convex quad with one vertex per quadrant around the origin.
    const Polygon q{{-u(rng), -u(rng)}, {u(rng), -u(rng)}, {u(rng), u(rng)}, {-u(rng), u(rng)}};
    const AreaCentroid whole = area_centroid(q);
    double area = 0.0, mx = 0.0, my = 0.0;
    for (const Rect& r : {Rect{-1, 0, -1, 0}, Rect{0, 1, -1, 0}, Rect{0, 1, 0, 1}, Rect{-1, 0, 0, 1}}) {
      const AreaCentroid part = area_centroid(clip_convex(q, r));
      CHECK(part.area > 0.0);
      CHECK(part.centroid.x >= r.x0);
      CHECK(part.centroid.x <= r.x1);
      area += part.area;
      mx += part.area * part.centroid.x;
      my += part.area * part.centroid.y;
    }
    CHECK(area == Approx(whole.area).epsilon(1e-13));
    CHECK(std::fabs(mx / area - whole.centroid.x) <= 1e-13);
    CHECK(std::fabs(my / area - whole.centroid.y) <= 1e-13);
  }
}
