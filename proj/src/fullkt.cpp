#include "wbkt/fullkt.hpp"

#include <cmath>
#include <sstream>

#include "wbkt/errors.hpp"
#include "wbkt/parallel.hpp"

namespace wbkt {

namespace {

// floor(a / 2) for signed a.
int floor_half(int a) { return a >= 0 ? a / 2 : -((1 - a) / 2); }

double max_abs_pair(const Array2D<double>& plus, const Array2D<double>& minus) {
  double m = 0.0;
  for (int k = plus.k_begin(); k < plus.k_end(); ++k)
    for (int j = plus.j_begin(); j < plus.j_end(); ++j) m = std::fmax(m, std::fmax(plus(j, k), -minus(j, k)));
  return m;
}

template <class Fn>
void with_location(const char* what, int j, int k, Fn&& fn) {
  try {
    fn();
  } catch (const NonphysicalState& e) {
    std::ostringstream os;
    os << e.what() << " at " << what << " (j=" << j << ", k=" << k << ")";
    throw NonphysicalState(os.str());
  }
}

}  // namespace

double SpeedField::max_x() const { return max_abs_pair(a_plus, a_minus); }
double SpeedField::max_y() const { return max_abs_pair(b_plus, b_minus); }

template <class Model>
InterfaceStates full_interface_states(const InterfaceStates& dev, const Background<Model>& bg) {
  constexpr std::size_t N = Model::N;
  InterfaceStates full = dev;
  const Grid2D& g = dev.east.grid();
  detail::parallel_for_2d(g.j_lo(), g.j_hi(), g.k_lo(), g.k_hi(), [&](int j, int k) {
    full.east.set(j, k, dev.east.template get<N>(j, k) + bg.x_faces(j, k));
    full.west.set(j, k, dev.west.template get<N>(j, k) + bg.x_faces(j - 1, k));
    full.north.set(j, k, dev.north.template get<N>(j, k) + bg.y_faces(j, k));
    full.south.set(j, k, dev.south.template get<N>(j, k) + bg.y_faces(j, k - 1));
  });
  return full;
}

template <class Model>
SpeedField local_speeds(const InterfaceStates& full, const Model& model, double eps) {
  constexpr std::size_t N = Model::N;
  const Grid2D& g = full.east.grid();
  const int j0 = g.j_lo() + 1, k0 = g.k_lo() + 1;
  SpeedField s;
  s.a_plus = Array2D<double>(j0, g.j_hi() - 2, k0, g.k_hi() - 1);
  s.a_minus = s.a_plus;
  s.b_plus = Array2D<double>(j0, g.j_hi() - 1, k0, g.k_hi() - 2);
  s.b_minus = s.b_plus;
  detail::parallel_for_2d(j0, g.j_hi() - 2, k0, g.k_hi() - 1, [&](int j, int k) {
    with_location("x-interface j+1/2", j, k, [&] {
      const auto [l1, lN] = model.speed_bounds(full.east.template get<N>(j, k), Axis::x);
      const auto [r1, rN] = model.speed_bounds(full.west.template get<N>(j + 1, k), Axis::x);
      s.a_plus(j, k) = std::fmax(std::fmax(lN, rN), eps);
      s.a_minus(j, k) = std::fmin(std::fmin(l1, r1), -eps);
    });
  });
  detail::parallel_for_2d(j0, g.j_hi() - 1, k0, g.k_hi() - 2, [&](int j, int k) {
    with_location("y-interface k+1/2", j, k, [&] {
      const auto [l1, lN] = model.speed_bounds(full.north.template get<N>(j, k), Axis::y);
      const auto [r1, rN] = model.speed_bounds(full.south.template get<N>(j, k + 1), Axis::y);
      s.b_plus(j, k) = std::fmax(std::fmax(lN, rN), eps);
      s.b_minus(j, k) = std::fmin(std::fmin(l1, r1), -eps);
    });
  });
  return s;
}

FanVertices fan_vertices(const SpeedField& s, double dt, const Grid2D& g) {
  const int j0 = g.j_lo() + 2, j1 = g.j_hi() - 2;
  const int k0 = g.k_lo() + 2, k1 = g.k_hi() - 2;
  FanVertices v(2 * j0, 2 * j1, 2 * k0, 2 * k1);
  const double dx = g.dx(), dy = g.dy();
  detail::parallel_for_2d(j0, j1, k0, k1, [&](int j, int k) {
    for (int cy = 0; cy < 2; ++cy) {
      for (int cx = 0; cx < 2; ++cx) {
        Vertex& z = v(2 * j + cx, 2 * k + cy);
        z.j = j;
        z.k = k;
        z.node_x = j + cx;
        z.node_y = k + cy;
        const int kn = cy ? k + 1 : k - 1;  // neighbouring row sharing the corner
        const int jn = cx ? j + 1 : j - 1;
        z.ox = cx ? dt * std::fmin(s.a_minus(j, k), s.a_minus(j, kn))
                  : dt * std::fmax(s.a_plus(j - 1, k), s.a_plus(j - 1, kn));
        z.oy = cy ? dt * std::fmin(s.b_minus(j, k), s.b_minus(jn, k))
                  : dt * std::fmax(s.b_plus(j, k - 1), s.b_plus(jn, k - 1));
        z.x = g.x_face(z.node_x) + z.ox;
        z.y = g.y_face(z.node_y) + z.oy;
        z.rx = (cx ? 0.5 : -0.5) * dx + z.ox;
        z.ry = (cy ? 0.5 : -0.5) * dy + z.oy;
      }
    }
    const Vertex& sw = v(2 * j, 2 * k);
    const Vertex& se = v(2 * j + 1, 2 * k);
    const Vertex& ne = v(2 * j + 1, 2 * k + 1);
    const Vertex& nw = v(2 * j, 2 * k + 1);
    if (!(se.rx > sw.rx && ne.rx > nw.rx && nw.ry > sw.ry && ne.ry > se.ry)) {
      std::ostringstream os;
      os << "central subdomain of cell (" << j << ", " << k << ") collapsed at dt=" << dt;
      throw DegenerateFan(os.str());
    }
  });
  return v;
}

const Piece* FanGeometry::piece(int j, int k, Part part) const {
  int ox = 0, oy = 0;
  switch (part) {
    case Part::C: break;
    case Part::E: ox = 1; break;
    case Part::W: ox = -1; break;
    case Part::N: oy = 1; break;
    case Part::S: oy = -1; break;
    case Part::NE: ox = 1; oy = 1; break;
    case Part::NW: ox = -1; oy = 1; break;
    case Part::SE: ox = 1; oy = -1; break;
    case Part::SW: ox = -1; oy = -1; break;
  }
  const int qx = 2 * j + ox, qy = 2 * k + oy;
  if (!quads.contains(qx, qy)) return nullptr;
  const Subdomain& d = quads(qx, qy);
  for (int i = 0; i < d.n_pieces; ++i)
    if (d.pieces[i].j == j && d.pieces[i].k == k) return &d.pieces[i];
  return nullptr;
}

double FanGeometry::piece_area_sum(int j, int k) const {
  double a = 0.0;
  for (Part p : {Part::C, Part::E, Part::W, Part::N, Part::S, Part::NE, Part::NW, Part::SE, Part::SW})
    if (const Piece* pc = piece(j, k, p)) a += pc->area;
  return a;
}

FanGeometry build_fan_geometry(const FanVertices& v, const Grid2D& g) {
  FanGeometry geom{g, v, Array2D<Subdomain>(v.j_begin(), v.j_end() - 1, v.k_begin(), v.k_end() - 1)};
  const double dx = g.dx(), dy = g.dy();
  detail::parallel_for_2d(v.j_begin(), v.j_end() - 1, v.k_begin(), v.k_end() - 1, [&](int qx, int qy) {
    Subdomain& d = geom.quads(qx, qy);
    d.smooth = (qx % 2 == 0) && (qy % 2 == 0);
    // Local frame at a grid node keeps thin fans well conditioned.
    const int nx0 = floor_half(qx + 1), ny0 = floor_half(qy + 1);
    auto local = [&](const Vertex& z) {
      return Point{(z.node_x - nx0) * dx + z.ox, (z.node_y - ny0) * dy + z.oy};
    };
    const Polygon quad{local(v(qx, qy)), local(v(qx + 1, qy)), local(v(qx + 1, qy + 1)), local(v(qx, qy + 1))};

    const int jx[2] = {floor_half(qx), floor_half(qx + 1)};
    const int ky[2] = {floor_half(qy), floor_half(qy + 1)};
    const int nj = (qx % 2 == 0) ? 1 : 2;
    const int nk = (qy % 2 == 0) ? 1 : 2;
    double ax = 0.0, ay = 0.0;
    for (int b = 0; b < nk; ++b) {
      for (int a = 0; a < nj; ++a) {
        const int j = jx[a], k = ky[b];
        const Rect cell{(j - nx0) * dx, (j + 1 - nx0) * dx, (k - ny0) * dy, (k + 1 - ny0) * dy};
        const AreaCentroid ac = area_centroid(clip_convex(quad, cell));
        Piece& p = d.pieces[d.n_pieces++];
        p.j = j;
        p.k = k;
        p.area = std::fmax(ac.area, 0.0);
        p.rx = ac.centroid.x - (j + 0.5 - nx0) * dx;
        p.ry = ac.centroid.y - (k + 0.5 - ny0) * dy;
        p.x = g.xc(j) + p.rx;
        p.y = g.yc(k) + p.ry;
        d.area += p.area;
        ax += p.area * ac.centroid.x;
        ay += p.area * ac.centroid.y;
      }
    }
    if (d.area > 0.0) {
      d.x = g.x_face(nx0) + ax / d.area;
      d.y = g.y_face(ny0) + ay / d.area;
    } else {
      d.x = g.x_face(nx0) + 0.25 * (quad[0].x + quad[1].x + quad[2].x + quad[3].x);
      d.y = g.y_face(ny0) + 0.25 * (quad[0].y + quad[1].y + quad[2].y + quad[3].y);
    }
    if (d.smooth && !(d.area > 0.0)) {
      std::ostringstream os;
      os << "central subdomain (" << qx / 2 << ", " << qy / 2 << ") has area " << d.area;
      throw DegenerateFan(os.str());
    }
  });
  return geom;
}

template <class Model>
Vec<Model::N> subdomain_average(const StateField& dev, const SlopeField& slopes, const Subdomain& d) {
  constexpr std::size_t N = Model::N;
  if (!(d.area > 0.0)) throw DegenerateFan("subdomain_average: empty subdomain");
  Vec<N> sum{};
  for (int i = 0; i < d.n_pieces; ++i) {
    const Piece& p = d.pieces[i];
    for (std::size_t c = 0; c < N; ++c) {
      const int ci = static_cast<int>(c);
      sum[c] += p.area * (dev(p.j, p.k, ci) + p.rx * slopes.sx(p.j, p.k, ci) + p.ry * slopes.sy(p.j, p.k, ci));
    }
  }
  return (1.0 / d.area) * sum;
}

template <class Model>
StateField flux_tendency(const StateField& dev, const Background<Model>& bg, const Model& model, double theta) {
  constexpr std::size_t N = Model::N;
  const Grid2D& g = dev.grid();
  StateField fx(g, static_cast<int>(N)), gy(g, static_cast<int>(N));
  detail::parallel_for_2d(g.j_lo(), g.j_hi(), g.k_lo(), g.k_hi(), [&](int j, int k) {
    with_location("cell", j, k, [&] {
      const Vec<N> qt = bg.cell(j, k);
      const Vec<N> q = dev.template get<N>(j, k) + qt;
      fx.set(j, k, model.flux(q, Axis::x) - model.flux(qt, Axis::x));
      gy.set(j, k, model.flux(q, Axis::y) - model.flux(qt, Axis::y));
    });
  });
  const SlopeField sf = mc_theta_slopes(fx, theta);
  const SlopeField sg = mc_theta_slopes(gy, theta);
  StateField t(g, static_cast<int>(N));
  for (std::size_t i = 0; i < t.raw().size(); ++i) t.raw()[i] = sf.sx.raw()[i] + sg.sy.raw()[i];
  return t;
}

template <class Model>
Vec<Model::N> predict_point(const StateField& dev, const SlopeField& slopes, const StateField& tendency,
                            const Model& model, double dt, int j, int k, double rx, double ry, double x, double y) {
  constexpr std::size_t N = Model::N;
  Vec<N> qp;
  for (std::size_t c = 0; c < N; ++c) {
    const int ci = static_cast<int>(c);
    qp[c] = dev(j, k, ci) + rx * slopes.sx(j, k, ci) + ry * slopes.sy(j, k, ci);
  }
  Vec<N> out = qp - (0.5 * dt) * tendency.template get<N>(j, k);
  if (model.has_source()) out += (0.5 * dt) * model.source(qp, x, y);
  return out;
}

template <class Model>
MidpointValues<Model> predictor_midpoint(const StateField& dev, const SlopeField& slopes, const StateField& tendency,
                                         const Model& model, double dt, const FanGeometry& geom) {
  constexpr std::size_t N = Model::N;
  const FanVertices& v = geom.vertices;
  const auto& q = geom.quads;
  MidpointValues<Model> mid{
      Array2D<Vec<N>>(v.j_begin(), v.j_end(), v.k_begin(), v.k_end()),
      Array2D<std::array<Vec<N>, 4>>(q.j_begin(), q.j_end(), q.k_begin(), q.k_end()),
  };
  detail::parallel_for_2d(v.j_begin(), v.j_end(), v.k_begin(), v.k_end(), [&](int vx, int vy) {
    const Vertex& z = v(vx, vy);
    mid.vertex(vx, vy) = predict_point(dev, slopes, tendency, model, dt, z.j, z.k, z.rx, z.ry, z.x, z.y);
  });
  detail::parallel_for_2d(q.j_begin(), q.j_end(), q.k_begin(), q.k_end(), [&](int qx, int qy) {
    const Subdomain& d = q(qx, qy);
    auto& out = mid.piece(qx, qy);
    for (int i = 0; i < d.n_pieces; ++i) {
      const Piece& p = d.pieces[i];
      out[i] = p.area > 0.0 ? predict_point(dev, slopes, tendency, model, dt, p.j, p.k, p.rx, p.ry, p.x, p.y)
                            : Vec<N>{};
    }
  });
  return mid;
}

namespace {

template <class Model>
Vec<Model::N> trapezoid(EdgeCase edge_case, double ex, double ey, const Vec<Model::N>& f_sum,
                        const Vec<Model::N>& g_sum) {
  // Case 1 uses the right-hand normal (ey, -ex)/L, case 2 the left-hand (-ey, ex)/L.
  return edge_case == EdgeCase::vertical ? (0.5 * ey) * f_sum - (0.5 * ex) * g_sum
                                         : (0.5 * ex) * g_sum - (0.5 * ey) * f_sum;
}

}  // namespace

template <class Model>
Vec<Model::N> edge_flux(EdgeCase edge_case, Point z0, Point z1, const Vec<Model::N>& dq0, const Vec<Model::N>& dq1,
                        const Vec<Model::N>& qt0, const Vec<Model::N>& qt1, const Model& model) {
  const auto f_sum = (model.flux(dq0 + qt0, Axis::x) - model.flux(qt0, Axis::x)) +
                     (model.flux(dq1 + qt1, Axis::x) - model.flux(qt1, Axis::x));
  const auto g_sum = (model.flux(dq0 + qt0, Axis::y) - model.flux(qt0, Axis::y)) +
                     (model.flux(dq1 + qt1, Axis::y) - model.flux(qt1, Axis::y));
  return trapezoid<Model>(edge_case, z1.x - z0.x, z1.y - z0.y, f_sum, g_sum);
}

template <class Model>
EdgeFluxes<Model> edge_fluxes(const FanGeometry& geom, const MidpointValues<Model>& mid, const Background<Model>& bg,
                              const Model& model) {
  constexpr std::size_t N = Model::N;
  const FanVertices& v = geom.vertices;
  const double dx = geom.grid.dx(), dy = geom.grid.dy();
  Array2D<Vec<N>> fv(v.j_begin(), v.j_end(), v.k_begin(), v.k_end());
  Array2D<Vec<N>> gv = fv;
  detail::parallel_for_2d(v.j_begin(), v.j_end(), v.k_begin(), v.k_end(), [&](int vx, int vy) {
    const Vertex& z = v(vx, vy);
    with_location("fan vertex of cell", z.j, z.k, [&] {
      const Vec<N> qt = bg.at(z.x, z.y);
      const Vec<N> q = mid.vertex(vx, vy) + qt;
      fv(vx, vy) = model.flux(q, Axis::x) - model.flux(qt, Axis::x);
      gv(vx, vy) = model.flux(q, Axis::y) - model.flux(qt, Axis::y);
    });
  });
  auto delta = [&](const Vertex& a, const Vertex& b) {
    return Point{(b.node_x - a.node_x) * dx + (b.ox - a.ox), (b.node_y - a.node_y) * dy + (b.oy - a.oy)};
  };
  EdgeFluxes<Model> h{Array2D<Vec<N>>(v.j_begin(), v.j_end(), v.k_begin(), v.k_end() - 1),
                      Array2D<Vec<N>>(v.j_begin(), v.j_end() - 1, v.k_begin(), v.k_end())};
  detail::parallel_for_2d(v.j_begin(), v.j_end(), v.k_begin(), v.k_end() - 1, [&](int vx, int qy) {
    const Point e = delta(v(vx, qy), v(vx, qy + 1));
    h.hx(vx, qy) = trapezoid<Model>(EdgeCase::vertical, e.x, e.y, fv(vx, qy) + fv(vx, qy + 1),
                                    gv(vx, qy) + gv(vx, qy + 1));
  });
  detail::parallel_for_2d(v.j_begin(), v.j_end() - 1, v.k_begin(), v.k_end(), [&](int qx, int vy) {
    const Point e = delta(v(qx, vy), v(qx + 1, vy));
    h.hy(qx, vy) = trapezoid<Model>(EdgeCase::horizontal, e.x, e.y, fv(qx, vy) + fv(qx + 1, vy),
                                    gv(qx, vy) + gv(qx + 1, vy));
  });
  return h;
}

template <class Model>
Vec<Model::N> source_average(const Subdomain& d, const std::array<Vec<Model::N>, 4>& piece_values,
                             const Model& model) {
  constexpr std::size_t N = Model::N;
  if (!(d.area > 0.0)) throw DegenerateFan("source_average: empty subdomain");
  Vec<N> sum{};
  if (!model.has_source()) return sum;
  for (int i = 0; i < d.n_pieces; ++i) {
    const Piece& p = d.pieces[i];
    if (p.area > 0.0) sum += p.area * model.source(piece_values[i], p.x, p.y);
  }
  return (1.0 / d.area) * sum;
}

template <class Model>
IntermediateAverages<Model> evolve_subdomains(const StateField& dev, const SlopeField& slopes,
                                              const FanGeometry& geom, const MidpointValues<Model>& mid,
                                              const EdgeFluxes<Model>& flux, const Model& model, double dt) {
  constexpr std::size_t N = Model::N;
  const auto& q = geom.quads;
  IntermediateAverages<Model> out{Array2D<Vec<N>>(q.j_begin(), q.j_end(), q.k_begin(), q.k_end())};
  detail::parallel_for_2d(q.j_begin(), q.j_end(), q.k_begin(), q.k_end(), [&](int qx, int qy) {
    const Subdomain& d = q(qx, qy);
    // An empty unsmooth fan (dt = 0) carries no area into the projection.
    if (!(d.area > 0.0) && !d.smooth) return;
    const Vec<N> div = (flux.hx(qx + 1, qy) - flux.hx(qx, qy)) + (flux.hy(qx, qy + 1) - flux.hy(qx, qy));
    out.wbar(qx, qy) = subdomain_average<Model>(dev, slopes, d) - (dt / d.area) * div +
                       dt * source_average(d, mid.piece(qx, qy), model);
  });
  return out;
}

namespace {

// Minmod-limited derivative at `mid` from neighbours along one direction.
// Zero when a neighbour is empty or the centroids are not strictly ordered.
double projection_slope(double wl, double wm, double wr, double zl, double zm, double zr, double theta) {
  const double h0 = zm - zl, h1 = zr - zm, h2 = zr - zl;
  if (!(h0 > 0.0 && h1 > 0.0)) return 0.0;
  return minmod3(theta * (wm - wl) / h0, (wr - wl) / h2, theta * (wr - wm) / h1);
}

}  // namespace

template <class Model>
StateField project(const IntermediateAverages<Model>& inter, const FanGeometry& geom, double theta,
                   bool reconstruct) {
  constexpr std::size_t N = Model::N;
  const Grid2D& g = geom.grid;
  const auto& q = geom.quads;
  const auto& w = inter.wbar;
  Array2D<Vec<N>> wx(q.j_begin(), q.j_end(), q.k_begin(), q.k_end());
  Array2D<Vec<N>> wy = wx;
  if (reconstruct) {
    detail::parallel_for_2d(q.j_begin() + 1, q.j_end() - 1, q.k_begin() + 1, q.k_end() - 1, [&](int qx, int qy) {
      const Subdomain& d = q(qx, qy);
      if (d.smooth || !(d.area > 0.0)) return;
      const Subdomain& l = q(qx - 1, qy);
      const Subdomain& r = q(qx + 1, qy);
      const Subdomain& s = q(qx, qy - 1);
      const Subdomain& n = q(qx, qy + 1);
      const bool x_ok = l.area > 0.0 && r.area > 0.0;
      const bool y_ok = s.area > 0.0 && n.area > 0.0;
      for (std::size_t c = 0; c < N; ++c) {
        wx(qx, qy)[c] = x_ok ? projection_slope(w(qx - 1, qy)[c], w(qx, qy)[c], w(qx + 1, qy)[c], l.x, d.x, r.x,
                                                theta)
                             : 0.0;
        wy(qx, qy)[c] = y_ok ? projection_slope(w(qx, qy - 1)[c], w(qx, qy)[c], w(qx, qy + 1)[c], s.y, d.y, n.y,
                                                theta)
                             : 0.0;
      }
    });
  }
  StateField out(g, static_cast<int>(N));
  const double inv_cell = 1.0 / (g.dx() * g.dy());
  detail::parallel_for_2d(0, g.nx(), 0, g.ny(), [&](int j, int k) {
    Vec<N> sum{};
    for (int qy = 2 * k - 1; qy <= 2 * k + 1; ++qy) {
      for (int qx = 2 * j - 1; qx <= 2 * j + 1; ++qx) {
        const Subdomain& d = q(qx, qy);
        for (int i = 0; i < d.n_pieces; ++i) {
          const Piece& p = d.pieces[i];
          if (p.j != j || p.k != k || !(p.area > 0.0)) continue;
          const double px = p.x - d.x, py = p.y - d.y;
          for (std::size_t c = 0; c < N; ++c) sum[c] += p.area * (w(qx, qy)[c] + px * wx(qx, qy)[c] + py * wy(qx, qy)[c]);
        }
      }
    }
    out.set(j, k, inv_cell * sum);
  });
  return out;
}

template <class Model>
SpeedField fully_discrete_speeds(const StateField& dev, const Background<Model>& bg, const Model& model,
                                 const SchemeConfig& cfg) {
  const SlopeField slopes = mc_theta_slopes(dev, cfg.theta);
  return local_speeds(full_interface_states(interface_states(dev, slopes), bg), model, cfg.eps);
}

template <class Model>
StateField step_fully_discrete(const StateField& dev, const Background<Model>& bg, const Model& model,
                               const SchemeConfig& cfg, double dt) {
  const Grid2D& g = dev.grid();
  if (g.ghost() < 3) throw ConfigError("the fully-discrete scheme needs ghost width >= 3");
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw SolverError("step_fully_discrete: invalid dt");
  const SlopeField slopes = mc_theta_slopes(dev, cfg.theta);
  const SpeedField speeds =
      local_speeds(full_interface_states(interface_states(dev, slopes), bg), model, cfg.eps);
  const FanGeometry geom = build_fan_geometry(fan_vertices(speeds, dt, g), g);
  const StateField tendency = flux_tendency(dev, bg, model, cfg.theta);
  const MidpointValues<Model> mid = predictor_midpoint(dev, slopes, tendency, model, dt, geom);
  const EdgeFluxes<Model> flux = edge_fluxes(geom, mid, bg, model);
  const IntermediateAverages<Model> inter = evolve_subdomains(dev, slopes, geom, mid, flux, model, dt);
  return project(inter, geom, cfg.theta, cfg.projection_reconstruction);
}

#define WBKT_INSTANTIATE_FULLKT(M)                                                                              \
  template InterfaceStates full_interface_states<M>(const InterfaceStates&, const Background<M>&);             \
  template SpeedField local_speeds<M>(const InterfaceStates&, const M&, double);                               \
  template Vec<M::N> subdomain_average<M>(const StateField&, const SlopeField&, const Subdomain&);              \
  template StateField flux_tendency<M>(const StateField&, const Background<M>&, const M&, double);             \
  template Vec<M::N> predict_point<M>(const StateField&, const SlopeField&, const StateField&, const M&, double, \
                                      int, int, double, double, double, double);                                \
  template MidpointValues<M> predictor_midpoint<M>(const StateField&, const SlopeField&, const StateField&,     \
                                                   const M&, double, const FanGeometry&);                      \
  template Vec<M::N> edge_flux<M>(EdgeCase, Point, Point, const Vec<M::N>&, const Vec<M::N>&,                  \
                                  const Vec<M::N>&, const Vec<M::N>&, const M&);                               \
  template EdgeFluxes<M> edge_fluxes<M>(const FanGeometry&, const MidpointValues<M>&, const Background<M>&,    \
                                        const M&);                                                             \
  template Vec<M::N> source_average<M>(const Subdomain&, const std::array<Vec<M::N>, 4>&, const M&);           \
  template IntermediateAverages<M> evolve_subdomains<M>(const StateField&, const SlopeField&,                  \
                                                        const FanGeometry&, const MidpointValues<M>&,          \
                                                        const EdgeFluxes<M>&, const M&, double);               \
  template StateField project<M>(const IntermediateAverages<M>&, const FanGeometry&, double, bool);            \
  template SpeedField fully_discrete_speeds<M>(const StateField&, const Background<M>&, const M&,              \
                                               const SchemeConfig&);                                           \
  template StateField step_fully_discrete<M>(const StateField&, const Background<M>&, const M&,                \
                                             const SchemeConfig&, double);

WBKT_INSTANTIATE_FULLKT(EulerModel)
WBKT_INSTANTIATE_FULLKT(ScalarModel)

}  // namespace wbkt
