#include "wbkt/reconstruct.hpp"

#include <cmath>
#include <sstream>

#include "wbkt/errors.hpp"
#include "wbkt/parallel.hpp"

namespace wbkt {

SlopeField mc_theta_slopes(const StateField& field, double theta) {
  if (!(theta >= 1.0 && theta <= 2.0)) {
    std::ostringstream os;
    os << "limiter theta must lie in [1, 2] (got " << theta << ")";
    throw ConfigError(os.str());
  }
  const Grid2D& g = field.grid();
  const int nc = field.n_comp();
  SlopeField s{StateField(g, nc), StateField(g, nc)};
  detail::parallel_for_2d(g.j_lo() + 1, g.j_hi() - 1, g.k_lo() + 1, g.k_hi() - 1, [&](int j, int k) {
    for (int c = 0; c < nc; ++c) {
      const double m = field(j, k, c);
      s.sx(j, k, c) = mc_theta(field(j - 1, k, c), m, field(j + 1, k, c), g.dx(), theta);
      s.sy(j, k, c) = mc_theta(field(j, k - 1, c), m, field(j, k + 1, c), g.dy(), theta);
    }
  });
  return s;
}

InterfaceStates interface_states(const StateField& field, const SlopeField& slopes) {
  const Grid2D& g = field.grid();
  const int nc = field.n_comp();
  InterfaceStates st{StateField(g, nc), StateField(g, nc), StateField(g, nc), StateField(g, nc)};
  const double hx = 0.5 * g.dx();
  const double hy = 0.5 * g.dy();
  detail::parallel_for_2d(g.j_lo(), g.j_hi(), g.k_lo(), g.k_hi(), [&](int j, int k) {
    for (int c = 0; c < nc; ++c) {
      const double m = field(j, k, c);
      st.east(j, k, c) = m + hx * slopes.sx(j, k, c);
      st.west(j, k, c) = m - hx * slopes.sx(j, k, c);
      st.north(j, k, c) = m + hy * slopes.sy(j, k, c);
      st.south(j, k, c) = m - hy * slopes.sy(j, k, c);
    }
  });
  return st;
}

std::vector<double> point_value(const StateField& field, const SlopeField& slopes, int j, int k, double x,
                                double y) {
  const Grid2D& g = field.grid();
  const double rx = x - g.xc(j);
  const double ry = y - g.yc(k);
  const double tol = 1e-12 * std::fmax(g.dx(), g.dy());
  if (std::fabs(rx) > 0.5 * g.dx() + tol || std::fabs(ry) > 0.5 * g.dy() + tol) {
    std::ostringstream os;
    os.precision(17);
    os << "point (" << x << ", " << y << ") lies outside cell (" << j << ", " << k << ")";
    throw PointOutsideCell(os.str());
  }
  std::vector<double> v(static_cast<std::size_t>(field.n_comp()));
  for (int c = 0; c < field.n_comp(); ++c)
    v[static_cast<std::size_t>(c)] = field(j, k, c) + rx * slopes.sx(j, k, c) + ry * slopes.sy(j, k, c);
  return v;
}

std::vector<std::vector<double>> corner_point_values(const StateField& field, const SlopeField& slopes, int j,
                                                     int k, const std::vector<Point2>& points) {
  std::vector<std::vector<double>> out;
  out.reserve(points.size());
  for (const Point2& p : points) out.push_back(point_value(field, slopes, j, k, p.x, p.y));
  return out;
}

}  // namespace wbkt
