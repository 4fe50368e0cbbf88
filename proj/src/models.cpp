#include "wbkt/models.hpp"

#include <cmath>
#include <sstream>

#include "wbkt/errors.hpp"

namespace wbkt {

namespace {

[[noreturn]] void nonphysical(const char* what, double rho, double p) {
  std::ostringstream os;
  os.precision(17);
  os << what << ": nonphysical state (rho=" << rho << ", p=" << p << ")";
  throw NonphysicalState(os.str());
}

}  // namespace

Vec<4> euler_to_conserved(const PrimitiveState& w, double gamma) {
  const double e = w.p / (gamma - 1.0) + 0.5 * w.rho * (w.u1 * w.u1 + w.u2 * w.u2);
  return {w.rho, w.rho * w.u1, w.rho * w.u2, e};
}

double euler_pressure(const Vec<4>& q, double gamma) {
  const double rho = q[0];
  if (!(rho > 0.0)) nonphysical("euler_pressure", rho, NAN);
  const double p = (gamma - 1.0) * (q[3] - 0.5 * (q[1] * q[1] + q[2] * q[2]) / rho);
  if (!(p > 0.0)) nonphysical("euler_pressure", rho, p);
  return p;
}

PrimitiveState euler_to_primitive(const Vec<4>& q, double gamma) {
  const double p = euler_pressure(q, gamma);
  return {q[0], q[1] / q[0], q[2] / q[0], p};
}

Vec<4> euler_flux_x(const Vec<4>& q, double gamma) {
  const double p = euler_pressure(q, gamma);
  const double u = q[1] / q[0];
  return {q[1], q[1] * u + p, q[2] * u, (q[3] + p) * u};
}

Vec<4> euler_flux_y(const Vec<4>& q, double gamma) {
  const double p = euler_pressure(q, gamma);
  const double v = q[2] / q[0];
  return {q[2], q[1] * v, q[2] * v + p, (q[3] + p) * v};
}

std::pair<double, double> euler_speed_bounds(const Vec<4>& q, double gamma, Axis axis) {
  const double p = euler_pressure(q, gamma);
  const double c = std::sqrt(gamma * p / q[0]);
  const double u = (axis == Axis::x ? q[1] : q[2]) / q[0];
  return {u - c, u + c};
}

Vec<4> euler_source(const Vec<4>& q, std::array<double, 2> gp) {
  return {0.0, -q[0] * gp[0], -q[0] * gp[1], -q[1] * gp[0] - q[2] * gp[1]};
}

ScalarModel ScalarModel::advection(double a, double b) {
  ScalarModel m;
  m.flux_x = [a](double u) { return a * u; };
  m.flux_y = [b](double u) { return b * u; };
  m.dflux_x = [a](double) { return a; };
  m.dflux_y = [b](double) { return b; };
  m.name = "advection";
  return m;
}

ScalarModel ScalarModel::burgers() {
  ScalarModel m;
  m.flux_x = [](double u) { return 0.5 * u * u; };
  m.flux_y = m.flux_x;
  m.dflux_x = [](double u) { return u; };
  m.dflux_y = m.dflux_x;
  m.name = "burgers";
  return m;
}

ScalarModel ScalarModel::zero_flux() {
  ScalarModel m;
  m.flux_x = [](double) { return 0.0; };
  m.flux_y = m.flux_x;
  m.dflux_x = m.flux_x;
  m.dflux_y = m.flux_x;
  m.name = "zero";
  return m;
}

PrimitiveState isothermal_equilibrium(double x, double y, double rho0, double p0, double phi_x, double phi_y) {
  const double e = std::exp(-(rho0 / p0) * (phi_x * x + phi_y * y));
  return {rho0 * e, 0.0, 0.0, p0 * e};
}

MovingAxis parse_moving_axis(const std::string& name) {
  if (name == "x") return MovingAxis::x;
  if (name == "y") return MovingAxis::y;
  if (name == "xy") return MovingAxis::xy;
  throw ConfigError("unknown moving_axis '" + name + "' (expected x|y|xy)");
}

namespace {

double axis_coordinate(double x, double y, MovingAxis axis) {
  switch (axis) {
    case MovingAxis::x: return x;
    case MovingAxis::y: return y;
    case MovingAxis::xy: return x + y;
  }
  return 0.0;
}

}  // namespace

PrimitiveState moving_equilibrium(double x, double y, double rho0, double p0, double g, double gamma,
                                  MovingAxis axis) {
  const double s = axis_coordinate(x, y, axis);
  const double e = std::exp(-(rho0 * g / p0) * s);
  const double u = std::exp(s);
  return {rho0 * e, axis == MovingAxis::y ? 0.0 : u, axis == MovingAxis::x ? 0.0 : u, std::pow(e, gamma)};
}

std::array<double, 2> moving_potential_gradient(double x, double y, double gamma, MovingAxis axis) {
  const double s = axis_coordinate(x, y, axis);
  const double es = std::exp(s);
  const double tail = gamma * std::exp(-gamma * s);
  switch (axis) {
    case MovingAxis::x: return {es * (-es + tail), 0.0};
    case MovingAxis::y: return {0.0, es * (-es + tail)};
    case MovingAxis::xy: {
      const double d = es * (-2.0 * es + tail);
      return {d, d};
    }
  }
  return {0.0, 0.0};
}

PrimitiveState perturbed_isothermal(double x, double y, double eta, Axis axis) {
  const double s = axis == Axis::x ? x : y;
  const double r = std::exp(-s);
  return {r, 0.0, 0.0, r + eta * std::exp(-100.0 * (s - 0.5) * (s - 0.5))};
}

}  // namespace wbkt
