#include <cmath>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "wbkt/errors.hpp"
#include "wbkt/semikt.hpp"

using namespace wbkt;
using doctest::Approx;

namespace {

// Smooth periodic data on [0, 1]^2 with random phases and amplitudes.
StateField smooth_periodic(const Grid2D& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  const double a = 0.5 + u(rng), b = u(rng), px = 2 * M_PI * u(rng), py = 2 * M_PI * u(rng), c = u(rng) - 0.5;
  StateField f(g, 1);
  for (int k = g.k_lo(); k < g.k_hi(); ++k)
    for (int j = g.j_lo(); j < g.j_hi(); ++j)
      f(j, k, 0) = c + a * std::sin(2 * M_PI * g.xc(j) + px) * std::cos(2 * M_PI * g.yc(k) + py) +
                   b * std::sin(4 * M_PI * (g.xc(j) + g.yc(k)) + px);
  return f;
}

double rhs_residual_max(int n, double theta) {
  const Grid2D g = make_grid(n, n, {0, 1, 0, 1}, 3);
  const ScalarModel model = ScalarModel::advection(1.0, -1.0);
  const auto bg = make_background<ScalarModel>(g, [](double x, double y) { return Vec<1>{std::exp(x + y)}; });
  SchemeConfig cfg;
  cfg.theta = theta;
  return stationary_residual(bg, model, cfg).max_abs_interior();
}

}  // namespace

TEST_CASE("numerical flux examples") {
  const EulerModel model = test::euler_with_gravity(1, 1);
  const Vec<4> qt{1.3, 0.2, -0.1, 3.1}, zero{};
  CHECK(max_abs(numerical_flux(Axis::x, zero, zero, qt, 2.0, -1.0, model)) == 0.0);

  const ScalarModel adv = ScalarModel::advection(1.0, 0.0);
  CHECK(numerical_flux<ScalarModel>(Axis::x, {0.0}, {1.0}, {0.0}, 1.0, -1.0, adv)[0] == 0.0);
  CHECK(numerical_flux<ScalarModel>(Axis::x, {1.0}, {0.0}, {0.0}, 1.0, -1.0, adv)[0] == 1.0);
}

TEST_CASE("hand-evaluated three-cell advection tendency") {
  // Data (0, 1, 0) with zero slopes and forced speeds +-1.
  const ScalarModel adv = ScalarModel::advection(1.0, 0.0);
  const double dx = 0.1;
  const double hp = numerical_flux<ScalarModel>(Axis::x, {1.0}, {0.0}, {0.0}, 1.0, -1.0, adv)[0];
  const double hm = numerical_flux<ScalarModel>(Axis::x, {0.0}, {1.0}, {0.0}, 1.0, -1.0, adv)[0];
  CHECK(-(hp - hm) / dx == Approx(-10.0));
}

TEST_CASE("dead fans") {
  const ScalarModel zero = ScalarModel::zero_flux();
  CHECK(numerical_flux<ScalarModel>(Axis::x, {0.4}, {0.4}, {0.0}, 0.0, 0.0, zero, 0.0)[0] == 0.0);
  CHECK_THROWS_AS(numerical_flux<ScalarModel>(Axis::x, {0.4}, {0.5}, {0.0}, 0.0, 0.0, zero, 0.0), DivisionByZeroSpeed);
  const double h = numerical_flux<ScalarModel>(Axis::x, {0.4}, {0.5}, {0.0}, 0.0, 0.0, zero, 1e-12)[0];
  CHECK(std::isfinite(h));
  CHECK(std::fabs(h) <= 1e-12);
}

TEST_CASE("property: equal one-sided values give the deviation flux") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-0.2, 0.2), sp(0.01, 3.0);
  const EulerModel model = test::euler_with_gravity(1, 1);
  for (int i = 0; i < 200; ++i) {
    const Vec<4> qt = euler_to_conserved({1.0 + u(rng), u(rng), u(rng), 1.0 + u(rng)}, 1.4);
    const Vec<4> d{u(rng), u(rng), u(rng), u(rng)};
    const Axis axis = i % 2 ? Axis::x : Axis::y;
    const Vec<4> h = numerical_flux(axis, d, d, qt, sp(rng), -sp(rng), model);
    const Vec<4> F = model.flux(d + qt, axis) - model.flux(qt, axis);
    for (int c = 0; c < 4; ++c) CHECK(std::fabs(h[c] - F[c]) <= 1e-14 * std::fmax(1.0, std::fabs(F[c])));
  }
}

TEST_CASE("zero deviation is a fixed point of the semi-discrete system") {
  const Grid2D g = make_grid(9, 8, {0, 1, 0, 1}, 3);
  {
    const EulerModel model = test::euler_with_gravity(1, 1);
    const auto bg = test::isothermal_background(g, 1.21, 1.0, 1, 1);
    CHECK(semi_discrete_rhs(StateField(g, 4), bg, model, SchemeConfig{}).max_abs_interior() == 0.0);
  }
  {
    EulerModel model;
    model.grad_phi = [](double x, double y) { return moving_potential_gradient(x, y, 1.4, MovingAxis::xy); };
    const auto bg = make_background<EulerModel>(g, [](double x, double y) {
      return euler_to_conserved(moving_equilibrium(x, y, 1, 1, 1, 1.4, MovingAxis::xy), 1.4);
    });
    CHECK(semi_discrete_rhs(StateField(g, 4), bg, model, SchemeConfig{}).max_abs_interior() == 0.0);
  }
  {
    const ScalarModel model = ScalarModel::burgers();
    StateField c(g, 1, 0.3);
    fill_ghosts(c, BoundarySpec::all(BcKind::periodic), model);
    CHECK(semi_discrete_rhs(c, zero_background<ScalarModel>(g), model, SchemeConfig{}).max_abs_interior() == 0.0);
  }
}

TEST_CASE("cfl report examples") {
  const CflReport edge = make_cfl_report(2.0, 0.0, 0.01, 0.01, 0.000625);
  CHECK(edge.courant() == Approx(0.125));
  CHECK(edge.satisfied);
  CHECK(make_cfl_report(2.0, 2.0, 0.01, 0.01, 0.0).satisfied);
  const CflReport over = make_cfl_report(2.0, 0.0, 0.01, 0.01, 0.001);
  CHECK(over.courant() == Approx(0.2));
  CHECK_FALSE(over.satisfied);

  const Grid2D g = make_grid(4, 4, {0, 1, 0, 1}, 3);
  StateField u(g, 1, -2.0);
  const CflReport r = cfl_report(u, zero_background<ScalarModel>(g), ScalarModel::burgers(), SchemeConfig{}, 0.1);
  CHECK(r.max_dfx == 2.0);
  CHECK(r.lambda == Approx(0.4));
  CHECK_FALSE(r.satisfied);
  CHECK(cfl_report(u, zero_background<ScalarModel>(g), ScalarModel::burgers(), SchemeConfig{}, 0.01).satisfied);
}

TEST_CASE("integrate examples") {
  const Grid2D g = make_grid(8, 8, {0, 1, 0, 1}, 3);
  std::mt19937_64 rng(52);
  const ScalarModel model = ScalarModel::advection(1.0, 0.5);
  const auto bg = zero_background<ScalarModel>(g);
  IntegrateOptions opts;
  opts.bc = BoundarySpec::all(BcKind::periodic);
  StateField u0 = test::random_scalar(g, rng, -1, 1);
  fill_ghosts(u0, opts.bc, model);

  const Trajectory none = integrate(u0, bg, model, SchemeConfig{}, 0.0, opts);
  CHECK(none.steps == 0);
  CHECK(test::max_diff(none.final_state, u0) == 0.0);

  opts.max_steps = 1;
  const Trajectory one = integrate(u0, bg, model, SchemeConfig{}, 1.0, opts);
  REQUIRE(one.steps == 1);
  const StateField r = semi_discrete_rhs(u0, bg, model, SchemeConfig{});
  double worst = 0.0;
  for (int k = 0; k < 8; ++k)
    for (int j = 0; j < 8; ++j) worst = std::fmax(worst, std::fabs(one.final_state(j, k, 0) - (u0(j, k, 0) + one.dts[0] * r(j, k, 0))));
  CHECK(worst == 0.0);

  opts.max_steps = 0;
  opts.method = Integrator::ssp_rk2;
  const Trajectory full = integrate(u0, bg, model, SchemeConfig{}, 0.3, opts);
  CHECK(full.t == 0.3);
  double total = 0.0;
  for (double dt : full.dts) total += dt;
  CHECK(total == Approx(0.3).epsilon(1e-14));
}

TEST_CASE("zero deviation stays zero under both integrators") {
  const Grid2D g = make_grid(10, 10, {0, 1, 0, 1}, 3);
  const EulerModel model = test::euler_with_gravity(1, 1);
  const auto bg = test::isothermal_background(g, 1.21, 1.0, 1, 1);
  for (Integrator m : {Integrator::forward_euler, Integrator::ssp_rk2}) {
    IntegrateOptions opts;
    opts.method = m;
    opts.cfl = 0.3;
    const Trajectory tr = integrate(StateField(g, 4), bg, model, SchemeConfig{}, 0.1, opts);
    CHECK(tr.final_state.max_abs_interior() <= 1e-13);
  }
}

TEST_CASE("max principle monitor") {
  const Grid2D g = make_grid(3, 3, {0, 1, 0, 1}, 2);
  const CflReport ok = make_cfl_report(1.0, 1.0, 0.1, 0.1, 0.01);
  StateField a(g, 1, 0.5), b(g, 1, 0.5);
  const MaxPrincipleReport flat = max_principle_monitor({a, b, a}, {ok, ok}, Integrator::forward_euler);
  CHECK(flat.certified);
  CHECK(flat.violations == 0);
  CHECK(flat.steps_checked == 2);

  b(1, 1, 0) = 0.6;
  const MaxPrincipleReport bad = max_principle_monitor({a, b}, {ok}, Integrator::forward_euler);
  CHECK(bad.violations == 1);
  CHECK(bad.first_violation_step == 1);
  CHECK(bad.worst_increase == Approx(0.1));

  CHECK_FALSE(max_principle_monitor({a, a}, {ok}, Integrator::ssp_rk2).certified);
  CHECK_FALSE(max_principle_monitor({a, a}, {make_cfl_report(1, 1, 0.1, 0.1, 0.02)}, Integrator::forward_euler).certified);
  CHECK_FALSE(max_principle_monitor({StateField(g, 4), StateField(g, 4)}, {ok}, Integrator::forward_euler).certified);
}

TEST_CASE("property: forward Euler Burgers keeps the maximum") {
  const Grid2D g = make_grid(24, 24, {0, 1, 0, 1}, 3);
  const ScalarModel model = ScalarModel::burgers();
  const auto bg = zero_background<ScalarModel>(g);
  std::mt19937_64 rng(53);
  for (int seed = 0; seed < 20; ++seed) {
    IntegrateOptions opts;
    opts.bc = BoundarySpec::all(BcKind::periodic);
    opts.dt_rule = DtRule::max_principle;
    opts.cfl = 0.125;
    opts.max_steps = 40;
    opts.keep_history = true;
    const Trajectory tr = integrate(smooth_periodic(g, rng), bg, model, SchemeConfig{}, 10.0, opts);
    const MaxPrincipleReport r = max_principle_monitor(tr.history, tr.cfl, tr.method);
    CHECK(r.certified);
    CHECK(r.violations == 0);
  }
}

TEST_CASE("property: periodic forward Euler conserves the total") {
  const Grid2D g = make_grid(12, 9, {0, 1, 0, 1}, 3);
  std::mt19937_64 rng(54);
  for (const ScalarModel& model : {ScalarModel::burgers(), ScalarModel::advection(0.6, -1.1)}) {
    IntegrateOptions opts;
    opts.bc = BoundarySpec::all(BcKind::periodic);
    opts.max_steps = 1;
    const StateField u0 = test::random_scalar(g, rng, -1, 1);
    const Trajectory tr = integrate(u0, zero_background<ScalarModel>(g), model, SchemeConfig{}, 1.0, opts);
    const double before = test::interior_sum(u0, 0), after = test::interior_sum(tr.final_state, 0);
    CHECK(std::fabs(after - before) <= 1e-12 * std::fmax(1.0, std::fabs(before)));
  }
}

TEST_CASE("stationary residual") {
  const Grid2D g = make_grid(6, 6, {0, 1, 0, 1}, 3);
  const auto flat = make_background<ScalarModel>(g, [](double, double) { return Vec<1>{0.8}; });
  CHECK(stationary_residual(flat, ScalarModel::burgers(), SchemeConfig{}).max_abs_interior() == 0.0);

  // Second order at theta = 1.  At theta = 1.5 the central slope is never
  // clipped for this data and the residual drops to third order.
  const double ratio1 = rhs_residual_max(32, 1.0) / rhs_residual_max(64, 1.0);
  CHECK(ratio1 >= 3.2);
  CHECK(ratio1 <= 4.8);
  const double ratio15 = rhs_residual_max(32, 1.5) / rhs_residual_max(64, 1.5);
  CHECK(ratio15 >= 6.4);
  CHECK(ratio15 <= 9.6);

  const ScalarModel model = ScalarModel::advection(1.0, -1.0);
  const auto bg = make_background<ScalarModel>(g, [](double x, double y) { return Vec<1>{std::exp(x + y)}; });
  CHECK(semi_discrete_rhs(StateField(g, 1), bg, model, SchemeConfig{}).max_abs_interior() == 0.0);
}

TEST_CASE("integrator options are validated") {
  const Grid2D g = make_grid(4, 4, {0, 1, 0, 1}, 3);
  IntegrateOptions opts;
  opts.dt_rule = DtRule::max_principle;
  opts.cfl = 0.2;
  CHECK_THROWS_AS(integrate(StateField(g, 1), zero_background<ScalarModel>(g), ScalarModel::burgers(), SchemeConfig{}, 1.0, opts),
                  ConfigError);
  CHECK(parse_integrator("ssp_rk2") == Integrator::ssp_rk2);
  CHECK_THROWS_AS(parse_integrator("rk4"), ConfigError);
}
