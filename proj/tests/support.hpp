#pragma once

#include <cmath>
#include <random>

#include "wbkt/fullkt.hpp"
#include "wbkt/grid.hpp"
#include "wbkt/models.hpp"

namespace test {

// Largest |a - b| over interior cells and components.
inline double max_diff(const wbkt::StateField& a, const wbkt::StateField& b) {
  const wbkt::Grid2D& g = a.grid();
  double m = 0.0;
  for (int k = 0; k < g.ny(); ++k)
    for (int j = 0; j < g.nx(); ++j)
      for (int c = 0; c < a.n_comp(); ++c) m = std::fmax(m, std::fabs(a(j, k, c) - b(j, k, c)));
  return m;
}

inline double interior_sum(const wbkt::StateField& f, int c) {
  const wbkt::Grid2D& g = f.grid();
  double s = 0.0;
  for (int k = 0; k < g.ny(); ++k)
    for (int j = 0; j < g.nx(); ++j) s += f(j, k, c);
  return s;
}

// Uniform random scalar field on every cell, ghosts included.
inline wbkt::StateField random_scalar(const wbkt::Grid2D& g, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  wbkt::StateField f(g, 1);
  for (int k = g.k_lo(); k < g.k_hi(); ++k)
    for (int j = g.j_lo(); j < g.j_hi(); ++j) f(j, k, 0) = u(rng);
  return f;
}

// Euler deviations that keep q~ + dq physical for an isothermal q~ of order one.
inline wbkt::StateField random_euler_deviation(const wbkt::Grid2D& g, std::mt19937_64& rng, double amp) {
  std::uniform_real_distribution<double> u(-amp, amp);
  wbkt::StateField f(g, 4);
  for (int k = g.k_lo(); k < g.k_hi(); ++k)
    for (int j = g.j_lo(); j < g.j_hi(); ++j) {
      const double drho = u(rng), du1 = u(rng), du2 = u(rng), dp = u(rng);
      f(j, k, 0) = 0.3 * drho;
      f(j, k, 1) = du1;
      f(j, k, 2) = du2;
      f(j, k, 3) = dp + 0.5 * (du1 * du1 + du2 * du2);
    }
  return f;
}

inline wbkt::EulerModel euler_with_gravity(double phi_x, double phi_y) {
  wbkt::EulerModel m;
  m.gamma = 1.4;
  m.grad_phi = [phi_x, phi_y](double, double) { return std::array<double, 2>{phi_x, phi_y}; };
  return m;
}

inline wbkt::Background<wbkt::EulerModel> isothermal_background(const wbkt::Grid2D& g, double rho0, double p0,
                                                                 double phi_x, double phi_y) {
  return wbkt::make_background<wbkt::EulerModel>(g, [=](double x, double y) {
    return wbkt::euler_to_conserved(wbkt::isothermal_equilibrium(x, y, rho0, p0, phi_x, phi_y), 1.4);
  });
}

}  // namespace test
