#pragma once

#include <array>

#include "wbkt/array2d.hpp"
#include "wbkt/grid.hpp"
#include "wbkt/models.hpp"
#include "wbkt/polygon.hpp"
#include "wbkt/reconstruct.hpp"

namespace wbkt {

struct SchemeConfig {
  double theta = 1.5;
  // Speed floor for the fully-discrete fan.
  double eps = 1e-8;
  // Linear reconstruction on the unsmooth subdomains during projection.
  bool projection_reconstruction = true;
  // The semi-discrete flux runs without a floor; semi_speed_floor only guards a+ == a-.
  double semi_eps = 0.0;
  double semi_speed_floor = 1e-12;
};

/// One-sided local speeds.  a_*(j, k) belongs to interface x_{j+1/2} on row k,
/// b_*(j, k) to interface y_{k+1/2} on column j.
struct SpeedField {
  Array2D<double> a_plus;
  Array2D<double> a_minus;
  Array2D<double> b_plus;
  Array2D<double> b_minus;

  // max over every stored interface of max(a+, -a-), resp. max(b+, -b-).
  double max_x() const;
  double max_y() const;
};

// Adds q~ at edge midpoints to one-sided deviation values.
template <class Model>
InterfaceStates full_interface_states(const InterfaceStates& dev, const Background<Model>& bg);

// a+ = max(lambda_N(L), lambda_N(R), eps), a- = min(lambda_1(L), lambda_1(R), -eps); b likewise.
template <class Model>
SpeedField local_speeds(const InterfaceStates& full, const Model& model, double eps);

struct Vertex {
  int j = 0;  // owning cell
  int k = 0;
  int node_x = 0;  // nearest grid node: x_face(node_x), y_face(node_y)
  int node_y = 0;
  double ox = 0.0;  // offset from that node
  double oy = 0.0;
  double x = 0.0;
  double y = 0.0;
  double rx = 0.0;  // offset from the owning cell's centre
  double ry = 0.0;
};

/// Fan vertices on a logical lattice: (vx, vy) = (2j + cx, 2k + cy) is
/// z_{j -/+ 1/4, k -/+ 1/4} with cx, cy = 0 for the minus and 1 for the plus
/// side.  Every vertex lies inside cell (j, k).
using FanVertices = Array2D<Vertex>;

// Throws DegenerateFan when a central subdomain has nonpositive area.
FanVertices fan_vertices(const SpeedField& speeds, double dt, const Grid2D& grid);

enum class Part { C, E, W, N, S, NE, NW, SE, SW };

struct Piece {
  int j = 0;
  int k = 0;
  double area = 0.0;
  double x = 0.0;  // centroid
  double y = 0.0;
  double rx = 0.0;  // centroid minus owning cell centre
  double ry = 0.0;
};

/// Quadrilateral D with its pieces C^I = D intersected with each owning cell.
///
/// Quad (qx, qy) spans lattice vertices (qx, qy) .. (qx + 1, qy + 1).  Even qx
/// is the central column of cell qx/2, odd qx the fan around x_{(qx+1)/2 - 1/2};
/// likewise in y.
struct Subdomain {
  std::array<Piece, 4> pieces{};
  int n_pieces = 0;
  double area = 0.0;
  double x = 0.0;  // centroid
  double y = 0.0;
  bool smooth = false;  // central D_{j,k}
};

struct FanGeometry {
  Grid2D grid;
  FanVertices vertices;
  Array2D<Subdomain> quads;

  const Piece* piece(int j, int k, Part part) const;
  // Sum of |C^I_{j,k}| over the nine parts of cell (j, k).
  double piece_area_sum(int j, int k) const;
};

FanGeometry build_fan_geometry(const FanVertices& vertices, const Grid2D& grid);

// Area-weighted centroid values of the owners' reconstructions over D.
// Throws DegenerateFan if |D| = 0.
template <class Model>
Vec<Model::N> subdomain_average(const StateField& dev, const SlopeField& slopes, const Subdomain& d);

/// Flux-divergence estimate (F_x + G_y) per cell from MC-theta slopes of the
/// cell deviation fluxes F(dq) = f(dq + q~) - f(q~).
template <class Model>
StateField flux_tendency(const StateField& dev, const Background<Model>& bg, const Model& model, double theta);

// dq^{n+1/2} at a point (x, y) of cell (j, k) offset (rx, ry) from its centre.
template <class Model>
Vec<Model::N> predict_point(const StateField& dev, const SlopeField& slopes, const StateField& tendency,
                            const Model& model, double dt, int j, int k, double rx, double ry, double x, double y);

template <class Model>
struct MidpointValues {
  Array2D<Vec<Model::N>> vertex;
  Array2D<std::array<Vec<Model::N>, 4>> piece;  // by quad, matching Subdomain::pieces
};

template <class Model>
MidpointValues<Model> predictor_midpoint(const StateField& dev, const SlopeField& slopes, const StateField& tendency,
                                         const Model& model, double dt, const FanGeometry& geom);

enum class EdgeCase {
  // Edge from z_{a,b-1/4} to z_{a,b+1/4}; positive flux points right of travel.
  vertical,
  // Edge from z_{a-1/4,b} to z_{a+1/4,b}; positive flux points left of travel.
  horizontal,
};

// Trapezoidal flux |e|/2 [n_x (F0 + F1) + n_y (G0 + G1)] across the edge.
template <class Model>
Vec<Model::N> edge_flux(EdgeCase edge_case, Point z0, Point z1, const Vec<Model::N>& dq0, const Vec<Model::N>& dq1,
                        const Vec<Model::N>& qt0, const Vec<Model::N>& qt1, const Model& model);

template <class Model>
struct EdgeFluxes {
  Array2D<Vec<Model::N>> hx;  // (vx, qy): vertex (vx, qy) to (vx, qy + 1)
  Array2D<Vec<Model::N>> hy;  // (qx, vy): vertex (qx, vy) to (qx + 1, vy)
};

template <class Model>
EdgeFluxes<Model> edge_fluxes(const FanGeometry& geom, const MidpointValues<Model>& mid, const Background<Model>& bg,
                              const Model& model);

// Area-weighted S at the piece centroids.  Throws DegenerateFan if |D| = 0.
template <class Model>
Vec<Model::N> source_average(const Subdomain& d, const std::array<Vec<Model::N>, 4>& piece_values,
                             const Model& model);

template <class Model>
struct IntermediateAverages {
  Array2D<Vec<Model::N>> wbar;  // by quad
};

template <class Model>
IntermediateAverages<Model> evolve_subdomains(const StateField& dev, const SlopeField& slopes,
                                              const FanGeometry& geom, const MidpointValues<Model>& mid,
                                              const EdgeFluxes<Model>& flux, const Model& model, double dt);

/// Averages the intermediate solution back onto the interior cells.  Unsmooth
/// subdomains carry minmod slopes from their row and column neighbours when
/// `reconstruct` is set; the central one stays constant.
template <class Model>
StateField project(const IntermediateAverages<Model>& inter, const FanGeometry& geom, double theta,
                   bool reconstruct);

/// One reconstruction, evolution and projection cycle on dq.
///
/// Ghost cells of `dev` must be filled; only interior cells of the result are set.
template <class Model>
StateField step_fully_discrete(const StateField& dev, const Background<Model>& bg, const Model& model,
                               const SchemeConfig& cfg, double dt);

// Speeds the fully-discrete step would use for this state (for dt selection).
template <class Model>
SpeedField fully_discrete_speeds(const StateField& dev, const Background<Model>& bg, const Model& model,
                                 const SchemeConfig& cfg);

}  // namespace wbkt
