#pragma once

#include <cmath>
#include <vector>

#include "wbkt/grid.hpp"

namespace wbkt {

// Same-sign argument of least magnitude, else 0.
inline double minmod3(double a, double b, double c) {
  if (a > 0.0 && b > 0.0 && c > 0.0) return std::fmin(a, std::fmin(b, c));
  if (a < 0.0 && b < 0.0 && c < 0.0) return std::fmax(a, std::fmax(b, c));
  return 0.0;
}

// MC-theta slope from three consecutive values spaced h apart.
inline double mc_theta(double left, double mid, double right, double h, double theta) {
  return minmod3(theta * (mid - left) / h, (right - left) / (2.0 * h), theta * (right - mid) / h);
}

/// Limited per-cell derivatives.  Defined on every cell with both neighbours
/// present, i.e. one layer inside the ghosted box; the outermost layer holds 0.
struct SlopeField {
  StateField sx;
  StateField sy;
};

// Throws ConfigError unless 1 <= theta <= 2.
SlopeField mc_theta_slopes(const StateField& field, double theta);

/// One-sided edge-midpoint values of the piecewise-linear reconstruction.
struct InterfaceStates {
  StateField east;
  StateField west;
  StateField north;
  StateField south;
};

InterfaceStates interface_states(const StateField& field, const SlopeField& slopes);

// Reconstruction of cell (j, k) at (x, y).  Throws PointOutsideCell when the
// point leaves the cell by more than 1e-12 max(dx, dy).
std::vector<double> point_value(const StateField& field, const SlopeField& slopes, int j, int k, double x,
                                double y);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

std::vector<std::vector<double>> corner_point_values(const StateField& field, const SlopeField& slopes, int j,
                                                     int k, const std::vector<Point2>& points);

}  // namespace wbkt
