#pragma once

#include <array>
#include <functional>
#include <string>
#include <utility>

#include "wbkt/array2d.hpp"
#include "wbkt/grid.hpp"
#include "wbkt/vec.hpp"

namespace wbkt {

struct PrimitiveState {
  double rho = 1.0;
  double u1 = 0.0;
  double u2 = 0.0;
  double p = 1.0;
};

using GradPhi = std::function<std::array<double, 2>(double, double)>;

Vec<4> euler_to_conserved(const PrimitiveState& w, double gamma);
// Throws NonphysicalState if rho <= 0 or p <= 0.
PrimitiveState euler_to_primitive(const Vec<4>& q, double gamma);
double euler_pressure(const Vec<4>& q, double gamma);
Vec<4> euler_flux_x(const Vec<4>& q, double gamma);
Vec<4> euler_flux_y(const Vec<4>& q, double gamma);
// (u_axis - c, u_axis + c), c = sqrt(gamma p / rho).
std::pair<double, double> euler_speed_bounds(const Vec<4>& q, double gamma, Axis axis);
// Linear in q for fixed gradient.
Vec<4> euler_source(const Vec<4>& q, std::array<double, 2> grad_phi);

/// Compressible Euler equations with a prescribed gravitational potential.
struct EulerModel {
  static constexpr std::size_t N = 4;
  using State = Vec<4>;

  double gamma = 1.4;
  GradPhi grad_phi = [](double, double) { return std::array<double, 2>{0.0, 0.0}; };

  State flux(const State& q, Axis axis) const {
    return axis == Axis::x ? euler_flux_x(q, gamma) : euler_flux_y(q, gamma);
  }
  std::pair<double, double> speed_bounds(const State& q, Axis axis) const {
    return euler_speed_bounds(q, gamma, axis);
  }
  State source(const State& q, double x, double y) const { return euler_source(q, grad_phi(x, y)); }
  bool has_source() const { return true; }
  std::array<int, 2> normal_momentum() const { return {1, 2}; }
};

/// Homogeneous scalar law u_t + f(u)_x + g(u)_y = 0.
struct ScalarModel {
  static constexpr std::size_t N = 1;
  using State = Vec<1>;

  std::function<double(double)> flux_x;
  std::function<double(double)> flux_y;
  std::function<double(double)> dflux_x;
  std::function<double(double)> dflux_y;
  std::string name;

  static ScalarModel advection(double a, double b);
  static ScalarModel burgers();
  // f = g = 0; every wave speed vanishes.
  static ScalarModel zero_flux();

  State flux(const State& u, Axis axis) const {
    return {axis == Axis::x ? flux_x(u[0]) : flux_y(u[0])};
  }
  std::pair<double, double> speed_bounds(const State& u, Axis axis) const {
    const double d = axis == Axis::x ? dflux_x(u[0]) : dflux_y(u[0]);
    return {d, d};
  }
  State source(const State&, double, double) const { return {0.0}; }
  bool has_source() const { return false; }
  std::array<int, 2> normal_momentum() const { return {-1, -1}; }
};

/// Stationary solution q~: analytic point values plus cached cell-centre values.
///
/// `cells` holds fn at every cell centre including ghosts, so boundary cells see
/// the exact equilibrium rather than an extrapolation.  `x_faces(j, k)` is fn at
/// (x_{j+1/2}, y_k) and `y_faces(j, k)` at (x_j, y_{k+1/2}), for j, k from one
/// below the first ghost index.
template <class Model>
struct Background {
  using State = Vec<Model::N>;
  std::function<State(double, double)> fn;
  StateField cells;
  Array2D<State> x_faces;
  Array2D<State> y_faces;

  State at(double x, double y) const { return fn(x, y); }
  State cell(int j, int k) const { return cells.template get<Model::N>(j, k); }
};

template <class Model>
Background<Model> make_background(const Grid2D& grid, std::function<Vec<Model::N>(double, double)> fn) {
  const int j0 = grid.j_lo(), j1 = grid.j_hi(), k0 = grid.k_lo(), k1 = grid.k_hi();
  Background<Model> bg{std::move(fn), StateField(grid, static_cast<int>(Model::N)),
                       Array2D<Vec<Model::N>>(j0 - 1, j1, k0, k1), Array2D<Vec<Model::N>>(j0, j1, k0 - 1, k1)};
  for (int k = k0; k < k1; ++k)
    for (int j = j0; j < j1; ++j) bg.cells.set(j, k, bg.fn(grid.xc(j), grid.yc(k)));
  for (int k = k0; k < k1; ++k)
    for (int j = j0 - 1; j < j1; ++j) bg.x_faces(j, k) = bg.fn(grid.x_face(j + 1), grid.yc(k));
  for (int k = k0 - 1; k < k1; ++k)
    for (int j = j0; j < j1; ++j) bg.y_faces(j, k) = bg.fn(grid.xc(j), grid.y_face(k + 1));
  return bg;
}

template <class Model>
Background<Model> zero_background(const Grid2D& grid) {
  return make_background<Model>(grid, [](double, double) { return Vec<Model::N>{}; });
}

// rho = rho0 e^{-(rho0/p0)(phi_x x + phi_y y)}, u = 0, p = p0 e^{same}.
PrimitiveState isothermal_equilibrium(double x, double y, double rho0, double p0, double phi_x, double phi_y);

enum class MovingAxis { x, y, xy };
MovingAxis parse_moving_axis(const std::string& name);

// s = x+y (xy), x or y.  rho = rho0 e^{-(rho0 g/p0) s}, u = e^s along the axis
// (both components for xy), p = (e^{-(rho0 g/p0) s})^gamma.
PrimitiveState moving_equilibrium(double x, double y, double rho0, double p0, double g, double gamma,
                                  MovingAxis axis = MovingAxis::xy);

/// Potential gradient that makes `moving_equilibrium` (rho0 = p0 = g = 1) steady.
///
/// Along one axis the gradient is e^s(-e^s + gamma e^{-gamma s}).  On the
/// diagonal both components equal e^s(-2e^s + gamma e^{-gamma s}); the extra
/// factor comes from the cross-momentum flux rho u1 u2.
std::array<double, 2> moving_potential_gradient(double x, double y, double gamma, MovingAxis axis);

// rho = e^{-s}, u = 0, p = e^{-s} + eta e^{-100 (s - 0.5)^2}, s = x or y.
PrimitiveState perturbed_isothermal(double x, double y, double eta, Axis axis);

}  // namespace wbkt
