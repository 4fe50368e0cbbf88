#include "wbkt/grid.hpp"

#include <cmath>
#include <sstream>

#include "wbkt/errors.hpp"

namespace wbkt {

Grid2D::Grid2D(int nx, int ny, Bounds bounds, int ghost)
    : nx_(nx), ny_(ny), bounds_(bounds),
      dx_((bounds.x_max - bounds.x_min) / nx),
      dy_((bounds.y_max - bounds.y_min) / ny),
      ghost_(ghost) {}

bool Grid2D::same_shape(const Grid2D& o) const {
  return nx_ == o.nx_ && ny_ == o.ny_ && ghost_ == o.ghost_ && bounds_.x_min == o.bounds_.x_min &&
         bounds_.x_max == o.bounds_.x_max && bounds_.y_min == o.bounds_.y_min &&
         bounds_.y_max == o.bounds_.y_max;
}

Grid2D make_grid(int nx, int ny, Bounds bounds, int ghost) {
  std::ostringstream err;
  if (nx < 1 || ny < 1) err << "cell counts must be >= 1 (got nx=" << nx << ", ny=" << ny << "); ";
  if (!(bounds.x_max > bounds.x_min) || !std::isfinite(bounds.x_max - bounds.x_min))
    err << "x bounds degenerate [" << bounds.x_min << ", " << bounds.x_max << "]; ";
  if (!(bounds.y_max > bounds.y_min) || !std::isfinite(bounds.y_max - bounds.y_min))
    err << "y bounds degenerate [" << bounds.y_min << ", " << bounds.y_max << "]; ";
  if (ghost < 2) err << "ghost width must be >= 2 (got " << ghost << "); ";
  if (!err.str().empty()) throw ConfigError("make_grid: " + err.str());
  return Grid2D(nx, ny, bounds, ghost);
}

StateField::StateField(const Grid2D& grid, int n_comp, double init)
    : grid_(grid), n_comp_(n_comp),
      data_(static_cast<std::size_t>(grid.nx_total()) * static_cast<std::size_t>(grid.ny_total()) *
                static_cast<std::size_t>(n_comp),
            init) {}

double StateField::max_abs_interior() const {
  double m = 0.0;
  for (int k = 0; k < grid_.ny(); ++k)
    for (int j = 0; j < grid_.nx(); ++j)
      for (double v : cell(j, k)) m = std::fmax(m, std::fabs(v));
  return m;
}

bool StateField::interior_finite() const {
  for (int k = 0; k < grid_.ny(); ++k)
    for (int j = 0; j < grid_.nx(); ++j)
      for (double v : cell(j, k))
        if (!std::isfinite(v)) return false;
  return true;
}

BcKind parse_bc_kind(const std::string& name) {
  if (name == "outflow") return BcKind::outflow;
  if (name == "reflecting") return BcKind::reflecting;
  if (name == "periodic") return BcKind::periodic;
  throw ConfigError("unknown boundary condition '" + name + "' (expected outflow|reflecting|periodic)");
}

std::string to_string(BcKind k) {
  switch (k) {
    case BcKind::outflow: return "outflow";
    case BcKind::reflecting: return "reflecting";
    case BcKind::periodic: return "periodic";
  }
  return "?";
}

namespace {

void copy_cell(StateField& f, int jd, int kd, int js, int ks) {
  auto dst = f.cell(jd, kd);
  auto src = f.cell(js, ks);
  for (std::size_t c = 0; c < dst.size(); ++c) dst[c] = src[c];
}

// Fills ghost cell `g` (offset 1..ghost outward) on one side of a 1D line of n cells.
// `at(i)` maps a line index to (j, k).
template <class At>
void fill_line_side(StateField& f, BcKind kind, bool low_side, int n, int ghost, int flip, At at) {
  for (int g = 1; g <= ghost; ++g) {
    const int dst = low_side ? -g : n - 1 + g;
    int src = 0;
    switch (kind) {
      case BcKind::outflow: src = low_side ? 0 : n - 1; break;
      case BcKind::reflecting: src = low_side ? g - 1 : n - g; break;
      case BcKind::periodic: src = low_side ? n - g : g - 1; break;
    }
    // Mirror or wrap beyond a short interior: reduce into [0, n).
    if (kind != BcKind::outflow) {
      src = ((src % n) + n) % n;
    }
    auto [jd, kd] = at(dst);
    auto [js, ks] = at(src);
    copy_cell(f, jd, kd, js, ks);
    if (kind == BcKind::reflecting) f(jd, kd, flip) = -f(jd, kd, flip);
  }
}

}  // namespace

void fill_ghosts(StateField& field, const BoundarySpec& bc, std::array<int, 2> normal_momentum) {
  const Grid2D& g = field.grid();
  const bool px = bc.at(Side::west) == BcKind::periodic;
  const bool px2 = bc.at(Side::east) == BcKind::periodic;
  const bool py = bc.at(Side::south) == BcKind::periodic;
  const bool py2 = bc.at(Side::north) == BcKind::periodic;
  if (px != px2 || py != py2) throw ConfigError("periodic boundaries must be set on both opposite sides");
  for (Side s : {Side::west, Side::east, Side::south, Side::north}) {
    if (bc.at(s) != BcKind::reflecting) continue;
    const int comp = (s == Side::west || s == Side::east) ? normal_momentum[0] : normal_momentum[1];
    if (comp < 0 || comp >= field.n_comp())
      throw ConfigError("reflecting boundary requires a normal-momentum component in the model");
  }

  const int gh = g.ghost();
  for (int k = 0; k < g.ny(); ++k) {
    auto at = [k](int j) { return std::pair{j, k}; };
    fill_line_side(field, bc.at(Side::west), true, g.nx(), gh, normal_momentum[0], at);
    fill_line_side(field, bc.at(Side::east), false, g.nx(), gh, normal_momentum[0], at);
  }
  for (int j = g.j_lo(); j < g.j_hi(); ++j) {
    auto at = [j](int k) { return std::pair{j, k}; };
    fill_line_side(field, bc.at(Side::south), true, g.ny(), gh, normal_momentum[1], at);
    fill_line_side(field, bc.at(Side::north), false, g.ny(), gh, normal_momentum[1], at);
  }
}

}  // namespace wbkt
