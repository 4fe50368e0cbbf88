#include <random>

#include "doctest.h"
#include "support.hpp"
#include "wbkt/errors.hpp"
#include "wbkt/grid.hpp"

using namespace wbkt;

TEST_CASE("make_grid spacing and centres") {
  const Grid2D g = make_grid(200, 200, {0, 1, 0, 1}, 2);
  CHECK(g.dx() == doctest::Approx(0.005).epsilon(1e-15));
  CHECK(g.dy() == doctest::Approx(0.005).epsilon(1e-15));
  CHECK(g.xc(0) == doctest::Approx(0.0025));
  CHECK(g.yc(199) == doctest::Approx(0.9975));

  const Grid2D one = make_grid(1, 1, {0, 1, 0, 1}, 2);
  CHECK(one.dx() == 1.0);
  CHECK(one.dy() == 1.0);
  CHECK(one.xc(0) == 0.5);

  const Grid2D tube = make_grid(400, 10, {0, 1, 0, 1}, 2);
  CHECK(tube.dx() == doctest::Approx(0.0025).epsilon(1e-15));
  CHECK(tube.dy() == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("make_grid rejects bad input") {
  CHECK_THROWS_AS(make_grid(0, 4, {0, 1, 0, 1}, 2), ConfigError);
  CHECK_THROWS_AS(make_grid(4, -1, {0, 1, 0, 1}, 2), ConfigError);
  CHECK_THROWS_AS(make_grid(4, 4, {1, 1, 0, 1}, 2), ConfigError);
  CHECK_THROWS_AS(make_grid(4, 4, {0, 1, 2, 1}, 2), ConfigError);
  CHECK_THROWS_AS(make_grid(4, 4, {0, 1, 0, 1}, 1), ConfigError);
}

TEST_CASE("StateField storage covers the ghosted box") {
  const Grid2D g = make_grid(5, 3, {0, 1, 0, 1}, 2);
  StateField f(g, 4, 1.5);
  CHECK(f.raw().size() == static_cast<std::size_t>((5 + 4) * (3 + 4) * 4));
  f(-2, -2, 0) = 7;
  f(6, 4, 3) = 9;
  CHECK(f(-2, -2, 0) == 7);
  CHECK(f(6, 4, 3) == 9);
  CHECK(f.max_abs_interior() == 1.5);
}

TEST_CASE("outflow copies the edge value into every ghost layer") {
  const Grid2D g = make_grid(4, 4, {0, 1, 0, 1}, 3);
  std::mt19937_64 rng(1);
  StateField f = test::random_scalar(g, rng, -1, 1);
  fill_ghosts(f, BoundarySpec::all(BcKind::outflow), std::array<int, 2>{-1, -1});
  for (int k = 0; k < 4; ++k)
    for (int l = 1; l <= 3; ++l) {
      CHECK(f(-l, k, 0) == f(0, k, 0));
      CHECK(f(3 + l, k, 0) == f(3, k, 0));
    }
  CHECK(f(-3, -3, 0) == f(0, 0, 0));
}

TEST_CASE("reflecting negates the normal momentum") {
  const Grid2D g = make_grid(3, 3, {0, 1, 0, 1}, 2);
  StateField f(g, 4);
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j) f.set(j, k, Vec<4>{1, 2, 3, 5});
  fill_ghosts(f, BoundarySpec::all(BcKind::reflecting), std::array<int, 2>{1, 2});
  CHECK(f.get<4>(-1, 1) == Vec<4>{1, -2, 3, 5});
  CHECK(f.get<4>(3, 1) == Vec<4>{1, -2, 3, 5});
  CHECK(f.get<4>(1, -1) == Vec<4>{1, 2, -3, 5});
  CHECK(f.get<4>(1, 4) == Vec<4>{1, 2, -3, 5});
}

TEST_CASE("reflecting mirrors interior cells") {
  const Grid2D g = make_grid(4, 1, {0, 1, 0, 1}, 2);
  StateField f(g, 4);
  for (int j = 0; j < 4; ++j) f.set(j, 0, Vec<4>{1.0 + j, 10.0 + j, 0, 3});
  fill_ghosts(f, BoundarySpec::all(BcKind::reflecting), std::array<int, 2>{1, 2});
  CHECK(f(-1, 0, 0) == 1.0);
  CHECK(f(-2, 0, 0) == 2.0);
  CHECK(f(-2, 0, 1) == -11.0);
  CHECK(f(4, 0, 0) == 4.0);
  CHECK(f(5, 0, 0) == 3.0);
}

TEST_CASE("periodic wraps around") {
  const Grid2D g = make_grid(4, 4, {0, 1, 0, 1}, 2);
  std::mt19937_64 rng(2);
  StateField f = test::random_scalar(g, rng, -1, 1);
  fill_ghosts(f, BoundarySpec::all(BcKind::periodic), std::array<int, 2>{-1, -1});
  CHECK(f(-1, 0, 0) == f(3, 0, 0));
  CHECK(f(-2, 2, 0) == f(2, 2, 0));
  CHECK(f(4, 1, 0) == f(0, 1, 0));
  CHECK(f(1, -1, 0) == f(1, 3, 0));
  CHECK(f(-1, -1, 0) == f(3, 3, 0));
}

TEST_CASE("invalid boundary specs are configuration errors") {
  const Grid2D g = make_grid(4, 4, {0, 1, 0, 1}, 2);
  StateField f(g, 1);
  CHECK_THROWS_AS(fill_ghosts(f, BoundarySpec::all(BcKind::reflecting), std::array<int, 2>{-1, -1}), ConfigError);
  BoundarySpec half = BoundarySpec::all(BcKind::outflow);
  half.set(Side::west, BcKind::periodic);
  CHECK_THROWS_AS(fill_ghosts(f, half, std::array<int, 2>{-1, -1}), ConfigError);
  CHECK(parse_bc_kind("reflecting") == BcKind::reflecting);
  CHECK_THROWS_AS(parse_bc_kind("sticky"), ConfigError);
}

TEST_CASE("property: constant data stays constant under every boundary kind") {
  const Grid2D g = make_grid(5, 4, {0, 1, 0, 1}, 3);
  const Vec<4> c{0.7, 0.3, -0.2, 2.0};
  for (BcKind kind : {BcKind::outflow, BcKind::periodic, BcKind::reflecting}) {
    StateField f(g, 4);
    for (int k = 0; k < 4; ++k)
      for (int j = 0; j < 5; ++j) f.set(j, k, c);
    fill_ghosts(f, BoundarySpec::all(kind), std::array<int, 2>{1, 2});
    for (int k = g.k_lo(); k < g.k_hi(); ++k)
      for (int j = g.j_lo(); j < g.j_hi(); ++j) {
        const bool x_ghost = j < 0 || j >= 5, y_ghost = k < 0 || k >= 4;
        const Vec<4> v = f.get<4>(j, k);
        CHECK(v[0] == c[0]);
        CHECK(v[3] == c[3]);
        const bool flip = kind == BcKind::reflecting;
        CHECK(v[1] == ((flip && x_ghost) ? -c[1] : c[1]));
        CHECK(v[2] == ((flip && y_ghost) ? -c[2] : c[2]));
      }
  }
}

TEST_CASE("property: fill_ghosts is idempotent") {
  const Grid2D g = make_grid(6, 5, {0, 1, 0, 1}, 3);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    BoundarySpec bc;
    std::uniform_int_distribution<int> pick(0, 2);
    const BcKind kx = static_cast<BcKind>(pick(rng)), ky = static_cast<BcKind>(pick(rng));
    bc.set(Side::west, kx);
    bc.set(Side::east, kx == BcKind::periodic ? kx : static_cast<BcKind>(pick(rng) % 2));
    bc.set(Side::south, ky);
    bc.set(Side::north, ky == BcKind::periodic ? ky : static_cast<BcKind>(pick(rng) % 2));
    StateField f = test::random_euler_deviation(g, rng, 0.5);
    fill_ghosts(f, bc, std::array<int, 2>{1, 2});
    StateField twice = f;
    fill_ghosts(twice, bc, std::array<int, 2>{1, 2});
    bool same = true;
    for (std::size_t i = 0; i < f.raw().size(); ++i) same = same && f.raw()[i] == twice.raw()[i];
    CHECK(same);
  }
}
