#include <algorithm>
#include <cmath>
#include <vector>

#include "wbkt/errors.hpp"
#include "wbkt_ref/reference.hpp"

namespace wbkt_ref {

using wbkt::Axis;
using wbkt::Grid2D;
using wbkt::Vec;
using wbkt::operator+;
using wbkt::operator-;
using wbkt::operator*;
using wbkt::operator+=;
using wbkt::operator-=;

namespace {

template <class T>
struct Table {
  int j0 = 0, k0 = 0, nj = 0, nk = 0;
  std::vector<T> data;
  Table(int j_begin, int j_end, int k_begin, int k_end)
      : j0(j_begin), k0(k_begin), nj(j_end - j_begin), nk(k_end - k_begin),
        data(static_cast<std::size_t>(nj * nk)) {}
  T& at(int j, int k) { return data[static_cast<std::size_t>((k - k0) * nj + (j - j0))]; }
  const T& at(int j, int k) const { return data[static_cast<std::size_t>((k - k0) * nj + (j - j0))]; }
};

int half_floor(int a) { return static_cast<int>(std::floor(a / 2.0)); }

double mm3(double a, double b, double c) {
  if (a > 0 && b > 0 && c > 0) return std::min({a, b, c});
  if (a < 0 && b < 0 && c < 0) return std::max({a, b, c});
  return 0.0;
}

double limited(double ul, double u, double ur, double h, double theta) {
  return mm3(theta * (u - ul) / h, (ur - ul) / (2 * h), theta * (ur - u) / h);
}

struct P2 {
  double x, y;
};

// Keeps the part of `poly` with s * (coord - c) <= 0, coord = x if along_x else y.
std::vector<P2> cut(const std::vector<P2>& poly, bool along_x, double c, double s) {
  std::vector<P2> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const P2 a = poly[i], b = poly[(i + 1) % n];
    const double da = s * ((along_x ? a.x : a.y) - c);
    const double db = s * ((along_x ? b.x : b.y) - c);
    if (da <= 0) out.push_back(a);
    if ((da < 0 && db > 0) || (da > 0 && db < 0)) {
      const double t = da / (da - db);
      P2 m{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
      if (along_x)
        m.x = c;
      else
        m.y = c;
      out.push_back(m);
    }
  }
  return out;
}

struct Moments {
  double area = 0, cx = 0, cy = 0;
};

Moments moments(const std::vector<P2>& poly) {
  Moments m;
  if (poly.size() < 3) return m;
  double a2 = 0, sx = 0, sy = 0;
  const P2 o = poly[0];
  for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
    const double x1 = poly[i].x - o.x, y1 = poly[i].y - o.y;
    const double x2 = poly[i + 1].x - o.x, y2 = poly[i + 1].y - o.y;
    const double cr = x1 * y2 - x2 * y1;
    a2 += cr;
    sx += cr * (x1 + x2);
    sy += cr * (y1 + y2);
  }
  m.area = 0.5 * a2;
  if (a2 > 0) {
    m.cx = o.x + sx / (3 * a2);
    m.cy = o.y + sy / (3 * a2);
  }
  return m;
}

// Corner z of cell (j, k) on side (px, py), px/py = +1 for j+1/4 / k+1/4 and -1 for j-1/4 / k-1/4.
struct Corner {
  int face_x = 0, face_y = 0;
  double ox = 0, oy = 0;
};

template <int N>
struct Piece {
  int j = 0, k = 0;
  double area = 0, x = 0, y = 0;  // centroid, absolute
  double rx = 0, ry = 0;          // centroid minus cell centre
  Vec<N> predicted{};
};

template <int N>
struct Sub {
  std::vector<Piece<N>> pieces;
  double area = 0, x = 0, y = 0;
  bool central = false;
  Vec<N> w{};
  Vec<N> wx{}, wy{};
};

}  // namespace

template <class Model>
StateField step_fully_discrete(const StateField& dev, const Background<Model>& bg, const Model& model,
                               const SchemeConfig& cfg, double dt) {
  constexpr int N = static_cast<int>(Model::N);
  using V = Vec<Model::N>;
  const Grid2D& g = dev.grid();
  if (g.ghost() < 3) throw wbkt::ConfigError("reference: ghost width >= 3 required");
  const int nx = g.nx(), ny = g.ny();
  const double dx = g.dx(), dy = g.dy(), th = cfg.theta;
  auto dq = [&](int j, int k) { return dev.template get<Model::N>(j, k); };

  // MC-theta slopes of dq on cells [-2, n+2).
  Table<V> sx(-2, nx + 2, -2, ny + 2), sy(-2, nx + 2, -2, ny + 2);
  for (int k = -2; k < ny + 2; ++k)
    for (int j = -2; j < nx + 2; ++j)
      for (int c = 0; c < N; ++c) {
        sx.at(j, k)[c] = limited(dev(j - 1, k, c), dev(j, k, c), dev(j + 1, k, c), dx, th);
        sy.at(j, k)[c] = limited(dev(j, k - 1, c), dev(j, k, c), dev(j, k + 1, c), dy, th);
      }

  // Deviation fluxes at cell centres and their limited derivatives on [-1, n+1).
  Table<V> Fc(-2, nx + 2, -2, ny + 2), Gc(-2, nx + 2, -2, ny + 2);
  for (int k = -2; k < ny + 2; ++k)
    for (int j = -2; j < nx + 2; ++j) {
      const V qt = bg.cell(j, k);
      Fc.at(j, k) = model.flux(dq(j, k) + qt, Axis::x) - model.flux(qt, Axis::x);
      Gc.at(j, k) = model.flux(dq(j, k) + qt, Axis::y) - model.flux(qt, Axis::y);
    }
  Table<V> T(-1, nx + 1, -1, ny + 1);
  for (int k = -1; k < ny + 1; ++k)
    for (int j = -1; j < nx + 1; ++j)
      for (int c = 0; c < N; ++c)
        T.at(j, k)[c] = limited(Fc.at(j - 1, k)[c], Fc.at(j, k)[c], Fc.at(j + 1, k)[c], dx, th) +
                        limited(Gc.at(j, k - 1)[c], Gc.at(j, k)[c], Gc.at(j, k + 1)[c], dy, th);

  // One-sided local speeds: ap/am at x_{j+1/2} row k, bp/bm at y_{k+1/2} column j.
  Table<double> ap(-2, nx + 1, -2, ny + 2), am(-2, nx + 1, -2, ny + 2);
  Table<double> bp(-2, nx + 2, -2, ny + 1), bm(-2, nx + 2, -2, ny + 1);
  for (int k = -2; k < ny + 2; ++k)
    for (int j = -2; j < nx + 1; ++j) {
      const V qt = bg.at(g.x_face(j + 1), g.yc(k));
      const V ql = dq(j, k) + (0.5 * dx) * sx.at(j, k) + qt;
      const V qr = dq(j + 1, k) - (0.5 * dx) * sx.at(j + 1, k) + qt;
      const auto l = model.speed_bounds(ql, Axis::x);
      const auto r = model.speed_bounds(qr, Axis::x);
      ap.at(j, k) = std::max({l.second, r.second, cfg.eps});
      am.at(j, k) = std::min({l.first, r.first, -cfg.eps});
    }
  for (int k = -2; k < ny + 1; ++k)
    for (int j = -2; j < nx + 2; ++j) {
      const V qt = bg.at(g.xc(j), g.y_face(k + 1));
      const V qb = dq(j, k) + (0.5 * dy) * sy.at(j, k) + qt;
      const V qa = dq(j, k + 1) - (0.5 * dy) * sy.at(j, k + 1) + qt;
      const auto b = model.speed_bounds(qb, Axis::y);
      const auto a = model.speed_bounds(qa, Axis::y);
      bp.at(j, k) = std::max({b.second, a.second, cfg.eps});
      bm.at(j, k) = std::min({b.first, a.first, -cfg.eps});
    }

  // Fan corners of every cell in [-1, n + 1).
  auto corner = [&](int j, int k, int px, int py) {
    Corner z;
    const int kk = k + py;  // row sharing the horizontal fan edge
    const int jj = j + px;
    if (px > 0) {
      z.face_x = j + 1;
      z.ox = dt * std::min(am.at(j, k), am.at(j, kk));
    } else {
      z.face_x = j;
      z.ox = dt * std::max(ap.at(j - 1, k), ap.at(j - 1, kk));
    }
    if (py > 0) {
      z.face_y = k + 1;
      z.oy = dt * std::min(bm.at(j, k), bm.at(jj, k));
    } else {
      z.face_y = k;
      z.oy = dt * std::max(bp.at(j, k - 1), bp.at(jj, k - 1));
    }
    return z;
  };

  auto source = [&](const V& q, double x, double y) { return model.has_source() ? model.source(q, x, y) : V{}; };
  auto predict = [&](int j, int k, double rx, double ry, double x, double y) {
    const V base = dq(j, k) + rx * sx.at(j, k) + ry * sy.at(j, k);
    return base - (0.5 * dt) * T.at(j, k) + (0.5 * dt) * source(base, x, y);
  };

  // Subdomain (I, J): I = 2j is the central column of cell j, I = 2j + 1 the fan between j and j + 1.
  const int I0 = -2, I1 = 2 * nx + 1, J0 = -2, J1 = 2 * ny + 1;
  Table<Sub<N>> subs(I0, I1, J0, J1);
  for (int J = J0; J < J1; ++J) {
    for (int I = I0; I < I1; ++I) {
      Sub<N>& s = subs.at(I, J);
      s.central = (I % 2 == 0) && (J % 2 == 0);
      // Corner owners: left/right cells in x, bottom/top cells in y.
      const int jl = half_floor(I), jr = half_floor(I + 1);
      const int kb = half_floor(J), kt = half_floor(J + 1);
      const int pl = (I % 2 == 0) ? -1 : +1, pr = (I % 2 == 0) ? +1 : -1;
      const int pb = (J % 2 == 0) ? -1 : +1, pt = (J % 2 == 0) ? +1 : -1;
      const Corner zc[4] = {corner(jl, kb, pl, pb), corner(jr, kb, pr, pb), corner(jr, kt, pr, pt),
                            corner(jl, kt, pl, pt)};
      const int fx0 = half_floor(I + 1), fy0 = half_floor(J + 1);
      std::vector<P2> quad;
      for (const Corner& z : zc) quad.push_back({(z.face_x - fx0) * dx + z.ox, (z.face_y - fy0) * dy + z.oy});

      double mx = 0, my = 0;
      for (int cj = jl; cj <= jr; ++cj) {
        for (int ck = kb; ck <= kt; ++ck) {
          std::vector<P2> p = quad;
          p = cut(p, true, (cj - fx0) * dx, -1.0);
          p = cut(p, true, (cj + 1 - fx0) * dx, 1.0);
          p = cut(p, false, (ck - fy0) * dy, -1.0);
          p = cut(p, false, (ck + 1 - fy0) * dy, 1.0);
          const Moments m = moments(p);
          Piece<N> pc;
          pc.j = cj;
          pc.k = ck;
          pc.area = std::max(m.area, 0.0);
          pc.rx = m.cx - (cj + 0.5 - fx0) * dx;
          pc.ry = m.cy - (ck + 0.5 - fy0) * dy;
          pc.x = g.xc(cj) + pc.rx;
          pc.y = g.yc(ck) + pc.ry;
          s.area += pc.area;
          mx += pc.area * m.cx;
          my += pc.area * m.cy;
          s.pieces.push_back(pc);
        }
      }
      if (s.central && !(s.area > 0)) throw wbkt::DegenerateFan("reference: empty central subdomain");
      if (!(s.area > 0)) continue;
      s.x = g.x_face(fx0) + mx / s.area;
      s.y = g.y_face(fy0) + my / s.area;

      // Midpoint values at the corners and fluxes through the counter-clockwise boundary.
      V Fz[4], Gz[4];
      for (int i = 0; i < 4; ++i) {
        const int oj = (i == 0 || i == 3) ? jl : jr;
        const int ok = (i < 2) ? kb : kt;
        const int px = (i == 0 || i == 3) ? pl : pr;
        const int py = (i < 2) ? pb : pt;
        const Corner& z = zc[i];
        const double rx = 0.5 * px * dx + z.ox;
        const double ry = 0.5 * py * dy + z.oy;
        const double x = g.x_face(z.face_x) + z.ox, y = g.y_face(z.face_y) + z.oy;
        const V v = predict(oj, ok, rx, ry, x, y);
        const V qt = bg.at(x, y);
        Fz[i] = model.flux(v + qt, Axis::x) - model.flux(qt, Axis::x);
        Gz[i] = model.flux(v + qt, Axis::y) - model.flux(qt, Axis::y);
      }
      V outflow{};
      for (int i = 0; i < 4; ++i) {
        const int n = (i + 1) % 4;
        const double ex = (zc[n].face_x - zc[i].face_x) * dx + (zc[n].ox - zc[i].ox);
        const double ey = (zc[n].face_y - zc[i].face_y) * dy + (zc[n].oy - zc[i].oy);
        outflow += (0.5 * ey) * (Fz[i] + Fz[n]) - (0.5 * ex) * (Gz[i] + Gz[n]);
      }

      V avg{}, src{};
      for (const Piece<N>& pc : s.pieces) {
        if (!(pc.area > 0)) continue;
        avg += pc.area * (dq(pc.j, pc.k) + pc.rx * sx.at(pc.j, pc.k) + pc.ry * sy.at(pc.j, pc.k));
        src += pc.area * source(predict(pc.j, pc.k, pc.rx, pc.ry, pc.x, pc.y), pc.x, pc.y);
      }
      s.w = (1.0 / s.area) * avg - (dt / s.area) * outflow + (dt / s.area) * src;
    }
  }

  // Limited slopes on the non-central subdomains.
  if (cfg.projection_reconstruction) {
    for (int J = J0 + 1; J < J1 - 1; ++J)
      for (int I = I0 + 1; I < I1 - 1; ++I) {
        Sub<N>& s = subs.at(I, J);
        if (s.central || !(s.area > 0)) continue;
        const Sub<N>& l = subs.at(I - 1, J);
        const Sub<N>& r = subs.at(I + 1, J);
        const Sub<N>& b = subs.at(I, J - 1);
        const Sub<N>& t = subs.at(I, J + 1);
        for (int c = 0; c < N; ++c) {
          if (l.area > 0 && r.area > 0 && s.x - l.x > 0 && r.x - s.x > 0)
            s.wx[c] = mm3(th * (s.w[c] - l.w[c]) / (s.x - l.x), (r.w[c] - l.w[c]) / (r.x - l.x),
                          th * (r.w[c] - s.w[c]) / (r.x - s.x));
          if (b.area > 0 && t.area > 0 && s.y - b.y > 0 && t.y - s.y > 0)
            s.wy[c] = mm3(th * (s.w[c] - b.w[c]) / (s.y - b.y), (t.w[c] - b.w[c]) / (t.y - b.y),
                          th * (t.w[c] - s.w[c]) / (t.y - s.y));
        }
      }
  }

  StateField out(g, N);
  for (int k = 0; k < ny; ++k)
    for (int j = 0; j < nx; ++j) {
      V sum{};
      for (int J = 2 * k - 1; J <= 2 * k + 1; ++J)
        for (int I = 2 * j - 1; I <= 2 * j + 1; ++I) {
          const Sub<N>& s = subs.at(I, J);
          for (const Piece<N>& pc : s.pieces) {
            if (pc.j != j || pc.k != k || !(pc.area > 0)) continue;
            sum += pc.area * (s.w + (pc.x - s.x) * s.wx + (pc.y - s.y) * s.wy);
          }
        }
      out.set(j, k, (1.0 / (dx * dy)) * sum);
    }
  return out;
}

template StateField step_fully_discrete<wbkt::EulerModel>(const StateField&, const Background<wbkt::EulerModel>&,
                                                          const wbkt::EulerModel&, const SchemeConfig&, double);
template StateField step_fully_discrete<wbkt::ScalarModel>(const StateField&, const Background<wbkt::ScalarModel>&,
                                                           const wbkt::ScalarModel&, const SchemeConfig&, double);

}  // namespace wbkt_ref
