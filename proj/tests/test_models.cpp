#include <cmath>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "wbkt/errors.hpp"
#include "wbkt/models.hpp"

using namespace wbkt;
using doctest::Approx;

namespace {

void check_vec(const Vec<4>& a, const Vec<4>& b, double tol) {
  for (int i = 0; i < 4; ++i) CHECK(std::fabs(a[i] - b[i]) <= tol);
}

// Central-difference residual f(q)_x + g(q)_y - S(q) of a steady state.
template <class State, class Grad>
Vec<4> balance_residual(State&& state, Grad&& grad, double x, double y, double h) {
  auto q = [&](double a, double b) { return euler_to_conserved(state(a, b), 1.4); };
  const Vec<4> fx = (1.0 / (2 * h)) * (euler_flux_x(q(x + h, y), 1.4) - euler_flux_x(q(x - h, y), 1.4));
  const Vec<4> gy = (1.0 / (2 * h)) * (euler_flux_y(q(x, y + h), 1.4) - euler_flux_y(q(x, y - h), 1.4));
  return fx + gy - euler_source(q(x, y), grad(x, y));
}

}  // namespace

TEST_CASE("euler_to_conserved examples") {
  check_vec(euler_to_conserved({1, 0, 0, 1}, 1.4), {1, 0, 0, 2.5}, 1e-15);
  check_vec(euler_to_conserved({1, 1, 0, 1}, 1.4), {1, 1, 0, 3.0}, 1e-15);
  check_vec(euler_to_conserved({0.125, 0, 0, 0.1}, 1.4), {0.125, 0, 0, 0.25}, 1e-15);
}

TEST_CASE("euler_pressure examples and nonphysical states") {
  CHECK(euler_pressure({1, 0, 0, 2.5}, 1.4) == Approx(1.0).epsilon(1e-15));
  CHECK(euler_pressure({1, 1, 0, 3.0}, 1.4) == Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(euler_pressure({1, 0, 0, 0.0}, 1.4), NonphysicalState);
  CHECK_THROWS_AS(euler_to_primitive({-1, 0, 0, 2.5}, 1.4), NonphysicalState);
  CHECK_THROWS_AS(euler_flux_x({0, 0, 0, 2.5}, 1.4), NonphysicalState);
}

TEST_CASE("euler fluxes examples") {
  check_vec(euler_flux_x({1, 0, 0, 2.5}, 1.4), {0, 1, 0, 0}, 1e-15);
  check_vec(euler_flux_x({1, 1, 0, 3.0}, 1.4), {1, 2, 0, 4}, 1e-14);
  check_vec(euler_flux_y({1, 1, 0, 3.0}, 1.4), {0, 0, 1, 0}, 1e-14);
}

TEST_CASE("euler_flux_y carries only pressure when u2 = 0") {
  // g = (rho u2, rho u1 u2, rho u2^2 + p, (E + p) u2): only the p entry survives.
  const Vec<4> g = euler_flux_y({1, 1, 0, 3.0}, 1.4);
  CHECK(g[0] == 0.0);
  CHECK(g[1] == 0.0);
  CHECK(g[2] == Approx(1.0));
  CHECK(g[3] == 0.0);
}

TEST_CASE("euler speed bounds examples") {
  const double c = std::sqrt(1.4);
  auto [l, r] = euler_speed_bounds({1, 0, 0, 2.5}, 1.4, Axis::x);
  CHECK(l == Approx(-1.18322).epsilon(1e-5));
  CHECK(r == Approx(1.18322).epsilon(1e-5));
  auto [l2, r2] = euler_speed_bounds({1, 1, 0, 3.0}, 1.4, Axis::x);
  CHECK(l2 == Approx(1 - c).epsilon(1e-14));
  CHECK(r2 == Approx(1 + c).epsilon(1e-14));
  auto [l3, r3] = euler_speed_bounds({1, 1, 0, 3.0}, 1.4, Axis::y);
  CHECK(l3 == Approx(-r3).epsilon(1e-15));
}

TEST_CASE("euler source examples") {
  check_vec(euler_source({1, 0, 0, 2.5}, {1, 1}), {0, -1, -1, 0}, 0);
  check_vec(euler_source({1, 1, 0, 3.0}, {1, 1}), {0, -1, -1, -1}, 0);
  check_vec(euler_source({0.3, -2, 5, 7}, {0, 0}), {0, 0, 0, 0}, 0);
}

TEST_CASE("isothermal equilibrium examples") {
  const PrimitiveState a = isothermal_equilibrium(0, 0, 1.21, 1, 1, 1);
  CHECK(a.rho == Approx(1.21).epsilon(1e-15));
  CHECK(a.p == Approx(1.0).epsilon(1e-15));
  CHECK(a.u1 == 0.0);
  const PrimitiveState b = isothermal_equilibrium(1, 0, 1.21, 1, 1, 1);
  CHECK(b.rho == Approx(1.21 * std::exp(-1.21)).epsilon(1e-15));
  const PrimitiveState c = isothermal_equilibrium(0.3, 0.9, 1.21, 1, 0, 0);
  CHECK(c.rho == 1.21);
  CHECK(c.p == 1.0);
}

TEST_CASE("moving equilibrium examples") {
  const PrimitiveState o = moving_equilibrium(0, 0, 1, 1, 1, 1.4);
  CHECK(o.rho == Approx(1.0));
  CHECK(o.u1 == Approx(1.0));
  CHECK(o.u2 == Approx(1.0));
  CHECK(o.p == Approx(1.0));
  const PrimitiveState m = moving_equilibrium(0.5, 0.5, 1, 1, 1, 1.4);
  CHECK(m.rho == Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(m.u1 == Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(m.p == Approx(std::exp(-1.4)).epsilon(1e-15));
  const PrimitiveState d1 = moving_equilibrium(0.2, 0.6, 1, 1, 1, 1.4);
  const PrimitiveState d2 = moving_equilibrium(0.7, 0.1, 1, 1, 1, 1.4);
  CHECK(d1.rho == Approx(d2.rho).epsilon(1e-15));
  CHECK(d1.p == Approx(d2.p).epsilon(1e-15));
  const PrimitiveState ax = moving_equilibrium(0.3, 0.8, 1, 1, 1, 1.4, MovingAxis::x);
  CHECK(ax.u1 == Approx(std::exp(0.3)));
  CHECK(ax.u2 == 0.0);
}

TEST_CASE("perturbed isothermal examples") {
  const PrimitiveState flat = perturbed_isothermal(0.3, 0.8, 0.0, Axis::x);
  const PrimitiveState iso = isothermal_equilibrium(0.3, 0.8, 1, 1, 1, 0);
  CHECK(flat.rho == Approx(iso.rho).epsilon(1e-15));
  CHECK(flat.p == Approx(iso.p).epsilon(1e-15));
  CHECK(perturbed_isothermal(0.5, 0.1, 0.01, Axis::x).p == Approx(std::exp(-0.5) + 0.01).epsilon(1e-15));
  CHECK(perturbed_isothermal(0.0, 0.1, 0.01, Axis::x).p == Approx(1 + 0.01 * std::exp(-25.0)).epsilon(1e-15));
  CHECK(perturbed_isothermal(0.1, 0.5, 0.01, Axis::y).p == Approx(std::exp(-0.5) + 0.01).epsilon(1e-15));
}

TEST_CASE("property: conserved/primitive round trip") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pos(0.05, 5.0), vel(-3.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const PrimitiveState w{pos(rng), vel(rng), vel(rng), pos(rng)};
    const Vec<4> q = euler_to_conserved(w, 1.4);
    const Vec<4> back = euler_to_conserved(euler_to_primitive(q, 1.4), 1.4);
    for (int c = 0; c < 4; ++c) CHECK(std::fabs(back[c] - q[c]) <= 1e-14 * std::fmax(1.0, std::fabs(q[c])));
  }
}

TEST_CASE("property: source is linear in the state") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 200; ++i) {
    const Vec<4> q1{u(rng), u(rng), u(rng), u(rng)}, q2{u(rng), u(rng), u(rng), u(rng)};
    const std::array<double, 2> grad{u(rng), u(rng)};
    const double a = u(rng), b = u(rng);
    const Vec<4> lhs = euler_source(a * q1 + b * q2, grad);
    const Vec<4> rhs = a * euler_source(q1, grad) + b * euler_source(q2, grad);
    check_vec(lhs, rhs, 1e-13);
  }
}

TEST_CASE("property: deviation flux has the Jacobian of the full flux") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> pos(0.5, 2.0), vel(-1.0, 1.0), small(-0.1, 0.1);
  const double h = 1e-6;
  for (int trial = 0; trial < 50; ++trial) {
    const Vec<4> qt = euler_to_conserved({pos(rng), vel(rng), vel(rng), pos(rng)}, 1.4);
    const Vec<4> d{small(rng), small(rng), small(rng), small(rng) + 0.2};
    for (Axis axis : {Axis::x, Axis::y}) {
      auto f = [&](const Vec<4>& q) { return axis == Axis::x ? euler_flux_x(q, 1.4) : euler_flux_y(q, 1.4); };
      auto F = [&](const Vec<4>& dq) { return f(dq + qt) - f(qt); };
      for (int c = 0; c < 4; ++c) {
        Vec<4> e{};
        e[c] = h;
        const Vec<4> jF = (1.0 / (2 * h)) * (F(d + e) - F(d - e));
        const Vec<4> jf = (1.0 / (2 * h)) * (f(d + qt + e) - f(d + qt - e));
        check_vec(jF, jf, 1e-6);
      }
    }
  }
}

TEST_CASE("property: isothermal equilibrium is hydrostatic") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(0, 1), phi(-2, 2);
  const double h = 1e-5;
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng), y = u(rng), px = phi(rng), py = phi(rng);
    auto p = [&](double a, double b) { return isothermal_equilibrium(a, b, 1.21, 1.0, px, py).p; };
    const double rho = isothermal_equilibrium(x, y, 1.21, 1.0, px, py).rho;
    CHECK(std::fabs((p(x + h, y) - p(x - h, y)) / (2 * h) + rho * px) <= 1e-8);
    CHECK(std::fabs((p(x, y + h) - p(x, y - h)) / (2 * h) + rho * py) <= 1e-8);
  }
}

TEST_CASE("property: moving equilibrium balances its potential") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(0, 1);
  for (MovingAxis axis : {MovingAxis::x, MovingAxis::y, MovingAxis::xy}) {
    auto state = [axis](double x, double y) { return moving_equilibrium(x, y, 1, 1, 1, 1.4, axis); };
    auto grad = [axis](double x, double y) { return moving_potential_gradient(x, y, 1.4, axis); };
    for (int i = 0; i < 50; ++i) {
      const Vec<4> r = balance_residual(state, grad, u(rng), u(rng), 1e-5);
      CHECK(max_abs(r) <= 1e-6);
    }
  }
}

TEST_CASE("single-axis potential gradient does not balance the diagonal moving state") {
  // Using e^s(-e^s + gamma e^{-gamma s}) in both components leaves a momentum
  // residual of size e^{2s}; the diagonal state needs -2 e^{2s}.
  auto state = [](double x, double y) { return moving_equilibrium(x, y, 1, 1, 1, 1.4, MovingAxis::xy); };
  auto single = [](double x, double y) {
    const double s = x + y;
    const double v = std::exp(s) * (-std::exp(s) + 1.4 * std::exp(-1.4 * s));
    return std::array<double, 2>{v, v};
  };
  const Vec<4> r = balance_residual(state, single, 0.3, 0.4, 1e-5);
  const double rho = std::exp(-0.7);
  CHECK(r[1] == Approx(rho * std::exp(1.4)).epsilon(1e-6));
  CHECK(std::fabs(r[0]) <= 1e-8);
}

TEST_CASE("scalar model derivatives match their fluxes") {
  const double h = 1e-6;
  for (const ScalarModel& m : {ScalarModel::advection(0.7, -1.3), ScalarModel::burgers(), ScalarModel::zero_flux()}) {
    for (double v : {-1.5, -0.2, 0.0, 0.4, 2.0}) {
      CHECK(std::fabs((m.flux_x(v + h) - m.flux_x(v - h)) / (2 * h) - m.dflux_x(v)) <= 1e-8);
      CHECK(std::fabs((m.flux_y(v + h) - m.flux_y(v - h)) / (2 * h) - m.dflux_y(v)) <= 1e-8);
    }
  }
  CHECK(ScalarModel::burgers().flux_x(2.0) == 2.0);
  CHECK(ScalarModel::advection(0.7, -1.3).flux_y(2.0) == Approx(-2.6));
}
