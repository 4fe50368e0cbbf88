#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wbkt/vec.hpp"

namespace wbkt {

struct Bounds {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
};

enum class Axis { x, y };

/// Uniform structured mesh of nx x ny cells with `ghost` layers on every side.
///
/// Interior cells are indexed j in [0, nx), k in [0, ny); ghost cells use the
/// signed offsets j in [-ghost, 0) and [nx, nx + ghost).  Cell (j, k) spans
/// [x_face(j), x_face(j + 1)] x [y_face(k), y_face(k + 1)], so x_face(j) is the
/// interface x_{j-1/2}.
class Grid2D {
 public:
  Grid2D() = default;
  Grid2D(int nx, int ny, Bounds bounds, int ghost);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int ghost() const { return ghost_; }
  const Bounds& bounds() const { return bounds_; }
  double x_min() const { return bounds_.x_min; }
  double x_max() const { return bounds_.x_max; }
  double y_min() const { return bounds_.y_min; }
  double y_max() const { return bounds_.y_max; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }

  double xc(int j) const { return bounds_.x_min + (j + 0.5) * dx_; }
  double yc(int k) const { return bounds_.y_min + (k + 0.5) * dy_; }
  double x_face(int j) const { return bounds_.x_min + j * dx_; }
  double y_face(int k) const { return bounds_.y_min + k * dy_; }

  // Index range including ghosts: [j_lo(), j_hi()).
  int j_lo() const { return -ghost_; }
  int j_hi() const { return nx_ + ghost_; }
  int k_lo() const { return -ghost_; }
  int k_hi() const { return ny_ + ghost_; }
  int nx_total() const { return nx_ + 2 * ghost_; }
  int ny_total() const { return ny_ + 2 * ghost_; }

  bool same_shape(const Grid2D& o) const;

 private:
  int nx_ = 0;
  int ny_ = 0;
  Bounds bounds_{};
  double dx_ = 0.0;
  double dy_ = 0.0;
  int ghost_ = 0;
};

// Throws ConfigError unless nx, ny >= 1, the bounds are nondegenerate and ghost >= 2.
Grid2D make_grid(int nx, int ny, Bounds bounds, int ghost = 3);

/// Per-cell vectors of n_comp values on a ghosted grid, stored cell-major.
class StateField {
 public:
  StateField() = default;
  StateField(const Grid2D& grid, int n_comp, double init = 0.0);

  const Grid2D& grid() const { return grid_; }
  int n_comp() const { return n_comp_; }

  double& operator()(int j, int k, int c) { return data_[offset(j, k) + c]; }
  double operator()(int j, int k, int c) const { return data_[offset(j, k) + c]; }

  std::span<double> cell(int j, int k) {
    return {data_.data() + offset(j, k), static_cast<std::size_t>(n_comp_)};
  }
  std::span<const double> cell(int j, int k) const {
    return {data_.data() + offset(j, k), static_cast<std::size_t>(n_comp_)};
  }

  template <std::size_t N>
  Vec<N> get(int j, int k) const {
    Vec<N> v;
    const double* p = data_.data() + offset(j, k);
    for (std::size_t c = 0; c < N; ++c) v[c] = p[c];
    return v;
  }

  template <std::size_t N>
  void set(int j, int k, const Vec<N>& v) {
    double* p = data_.data() + offset(j, k);
    for (std::size_t c = 0; c < N; ++c) p[c] = v[c];
  }

  std::span<double> raw() { return data_; }
  std::span<const double> raw() const { return data_; }

  // Largest |value| over interior cells, all components.
  double max_abs_interior() const;
  bool interior_finite() const;

 private:
  std::size_t offset(int j, int k) const {
    return (static_cast<std::size_t>(k + grid_.ghost()) * static_cast<std::size_t>(grid_.nx_total()) +
            static_cast<std::size_t>(j + grid_.ghost())) *
           static_cast<std::size_t>(n_comp_);
  }

  Grid2D grid_{};
  int n_comp_ = 0;
  std::vector<double> data_;
};

enum class BcKind { outflow, reflecting, periodic };
enum class Side { west = 0, east = 1, south = 2, north = 3 };

struct BoundarySpec {
  std::array<BcKind, 4> kind{BcKind::outflow, BcKind::outflow, BcKind::outflow, BcKind::outflow};

  static BoundarySpec all(BcKind k) { return BoundarySpec{{k, k, k, k}}; }
  BcKind at(Side s) const { return kind[static_cast<int>(s)]; }
  void set(Side s, BcKind k) { kind[static_cast<int>(s)] = k; }
};

BcKind parse_bc_kind(const std::string& name);
std::string to_string(BcKind k);

/// Fills every ghost layer of `field` from its interior.
///
/// x-sides are filled first over interior rows, then y-sides over all columns,
/// so corner ghosts are consistent with both directions.  `normal_momentum`
/// names the component negated at reflecting x- and y-walls; a negative entry
/// means the model has none, which makes a reflecting wall a ConfigError.
/// Periodic sides must come in pairs.
void fill_ghosts(StateField& field, const BoundarySpec& bc, std::array<int, 2> normal_momentum);

template <class Model>
void fill_ghosts(StateField& field, const BoundarySpec& bc, const Model& model) {
  fill_ghosts(field, bc, model.normal_momentum());
}

}  // namespace wbkt
