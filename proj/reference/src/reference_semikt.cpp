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

double mm3(double a, double b, double c) {
  if (a > 0 && b > 0 && c > 0) return std::min({a, b, c});
  if (a < 0 && b < 0 && c < 0) return std::max({a, b, c});
  return 0.0;
}

double limited(double ul, double u, double ur, double h, double theta) {
  return mm3(theta * (u - ul) / h, (ur - ul) / (2 * h), theta * (ur - u) / h);
}

// H = [a+ F(L) - a- F(R)] / (a+ - a-) + a+ a- / (a+ - a-) [R - L].
template <class Model>
Vec<Model::N> kt_flux(const Model& model, Axis axis, const Vec<Model::N>& L, const Vec<Model::N>& R,
                      const Vec<Model::N>& qt, double floor) {
  const auto FL = model.flux(L + qt, axis) - model.flux(qt, axis);
  const auto FR = model.flux(R + qt, axis) - model.flux(qt, axis);
  const auto l = model.speed_bounds(L + qt, axis);
  const auto r = model.speed_bounds(R + qt, axis);
  double ap = std::max({l.second, r.second, 0.0});
  double am = std::min({l.first, r.first, 0.0});
  if (ap - am < 1e-300) {
    if (L == R) return FL;
    if (!(floor > 0)) throw wbkt::DivisionByZeroSpeed("reference: zero fan width");
    ap = std::max(ap, floor / 2);
    am = std::min(am, -floor / 2);
  }
  return (ap / (ap - am)) * FL - (am / (ap - am)) * FR + (ap * am / (ap - am)) * (R - L);
}

}  // namespace

template <class Model>
StateField semi_discrete_rhs(const StateField& dev, const Background<Model>& bg, const Model& model,
                             const SchemeConfig& cfg) {
  using V = Vec<Model::N>;
  constexpr int N = static_cast<int>(Model::N);
  const Grid2D& g = dev.grid();
  const double dx = g.dx(), dy = g.dy();
  auto one_sided = [&](int j, int k, double hx, double hy) {
    V v;
    for (int c = 0; c < N; ++c)
      v[c] = dev(j, k, c) + hx * limited(dev(j - 1, k, c), dev(j, k, c), dev(j + 1, k, c), dx, cfg.theta) +
             hy * limited(dev(j, k - 1, c), dev(j, k, c), dev(j, k + 1, c), dy, cfg.theta);
    return v;
  };
  auto east = [&](int j, int k) { return one_sided(j, k, 0.5 * dx, 0.0); };
  auto west = [&](int j, int k) { return one_sided(j, k, -0.5 * dx, 0.0); };
  auto north = [&](int j, int k) { return one_sided(j, k, 0.0, 0.5 * dy); };
  auto south = [&](int j, int k) { return one_sided(j, k, 0.0, -0.5 * dy); };

  StateField out(g, N);
  for (int k = 0; k < g.ny(); ++k)
    for (int j = 0; j < g.nx(); ++j) {
      const V He = kt_flux(model, Axis::x, east(j, k), west(j + 1, k), bg.at(g.x_face(j + 1), g.yc(k)),
                           cfg.semi_speed_floor);
      const V Hw = kt_flux(model, Axis::x, east(j - 1, k), west(j, k), bg.at(g.x_face(j), g.yc(k)),
                           cfg.semi_speed_floor);
      const V Hn = kt_flux(model, Axis::y, north(j, k), south(j, k + 1), bg.at(g.xc(j), g.y_face(k + 1)),
                           cfg.semi_speed_floor);
      const V Hs = kt_flux(model, Axis::y, north(j, k - 1), south(j, k), bg.at(g.xc(j), g.y_face(k)),
                           cfg.semi_speed_floor);
      V r = (-1.0 / dx) * (He - Hw) - (1.0 / dy) * (Hn - Hs);
      if (model.has_source()) r += model.source(dev.template get<Model::N>(j, k), g.xc(j), g.yc(k));
      out.set(j, k, r);
    }
  return out;
}

template StateField semi_discrete_rhs<wbkt::EulerModel>(const StateField&, const Background<wbkt::EulerModel>&,
                                                        const wbkt::EulerModel&, const SchemeConfig&);
template StateField semi_discrete_rhs<wbkt::ScalarModel>(const StateField&, const Background<wbkt::ScalarModel>&,
                                                         const wbkt::ScalarModel&, const SchemeConfig&);

namespace {

struct Combination {
  // Coefficients of W_{j+1}, E_j, W_j, E_{j-1}, S_{k+1}, N_k, S_k, N_{k-1} and those values.
  double coef[8];
  double value[8];
};

Combination combination(const StateField& u, const wbkt::ScalarModel& m, double qt, const SchemeConfig& cfg,
                        double dt, int j, int k) {
  const Grid2D& g = u.grid();
  const double dx = g.dx(), dy = g.dy();
  const double lam = dt / dx, mu = dt / dy;
  auto sx = [&](int a, int b) { return limited(u(a - 1, b, 0), u(a, b, 0), u(a + 1, b, 0), dx, cfg.theta); };
  auto sy = [&](int a, int b) { return limited(u(a, b - 1, 0), u(a, b, 0), u(a, b + 1, 0), dy, cfg.theta); };
  auto E = [&](int a, int b) { return u(a, b, 0) + 0.5 * dx * sx(a, b); };
  auto W = [&](int a, int b) { return u(a, b, 0) - 0.5 * dx * sx(a, b); };
  auto No = [&](int a, int b) { return u(a, b, 0) + 0.5 * dy * sy(a, b); };
  auto So = [&](int a, int b) { return u(a, b, 0) - 0.5 * dy * sy(a, b); };
  auto F = [&](double v) { return m.flux_x(v + qt) - m.flux_x(qt); };
  auto G = [&](double v) { return m.flux_y(v + qt) - m.flux_y(qt); };
  auto dF = [&](double v) { return m.dflux_x(v + qt); };
  auto dG = [&](double v) { return m.dflux_y(v + qt); };
  // Difference quotient, with the derivative where the two values coincide.
  auto ratio = [](auto&& f, auto&& df, double hi, double lo) { return hi != lo ? (f(hi) - f(lo)) / (hi - lo) : df(lo); };

  struct Fan {
    double ap, am, r, lo, hi;
  };
  auto fan = [&](bool x_dir, double lo, double hi) {
    const double d1 = x_dir ? dF(lo) : dG(lo);
    const double d2 = x_dir ? dF(hi) : dG(hi);
    Fan f{std::max({d1, d2, 0.0}), std::min({d1, d2, 0.0}), 0, lo, hi};
    if (f.ap - f.am < 1e-300 && lo != hi) {
      if (!(cfg.semi_speed_floor > 0)) throw wbkt::DivisionByZeroSpeed("reference: zero fan width");
      f.ap = std::max(f.ap, cfg.semi_speed_floor / 2);
      f.am = std::min(f.am, -cfg.semi_speed_floor / 2);
    }
    f.r = x_dir ? ratio(F, dF, hi, lo) : ratio(G, dG, hi, lo);
    return f;
  };
  // Coefficient pieces of a fan: c_minus multiplies the downstream value, c_plus the upstream one.
  auto width = [](const Fan& f) { return f.ap - f.am; };

  const double e = E(j, k), w = W(j, k), n = No(j, k), s = So(j, k);
  const Fan xr = fan(true, e, W(j + 1, k));    // x_{j+1/2}: lo = E_j, hi = W_{j+1}
  const Fan xl = fan(true, E(j - 1, k), w);    // x_{j-1/2}
  const Fan yt = fan(false, n, So(j, k + 1));  // y_{k+1/2}
  const Fan yb = fan(false, No(j, k - 1), s);  // y_{k-1/2}
  const double rx = ratio(F, dF, e, w);
  const double ry = ratio(G, dG, n, s);

  Combination c{};
  auto right_coef = [&](const Fan& f) {
    return width(f) > 0 ? (f.am * f.r - f.ap * f.am) / width(f) : 0.0;
  };
  auto left_coef = [&](const Fan& f) {
    return width(f) > 0 ? (f.ap * f.r - f.ap * f.am) / width(f) : 0.0;
  };
  c.value[0] = xr.hi;
  c.coef[0] = lam * right_coef(xr);
  c.value[1] = e;
  c.coef[1] = 0.25 - lam * (right_coef(xr) + rx);
  c.value[2] = w;
  c.coef[2] = 0.25 + lam * (rx - left_coef(xl));
  c.value[3] = xl.lo;
  c.coef[3] = lam * left_coef(xl);
  c.value[4] = yt.hi;
  c.coef[4] = mu * right_coef(yt);
  c.value[5] = n;
  c.coef[5] = 0.25 - mu * (right_coef(yt) + ry);
  c.value[6] = s;
  c.coef[6] = 0.25 + mu * (ry - left_coef(yb));
  c.value[7] = yb.lo;
  c.coef[7] = mu * left_coef(yb);
  return c;
}

}  // namespace

StateField convex_combination_step(const StateField& dev, const wbkt::ScalarModel& model, double qt,
                                   const SchemeConfig& cfg, double dt) {
  const Grid2D& g = dev.grid();
  StateField out = dev;
  for (int k = 0; k < g.ny(); ++k)
    for (int j = 0; j < g.nx(); ++j) {
      const Combination c = combination(dev, model, qt, cfg, dt, j, k);
      double v = 0;
      for (int i = 0; i < 8; ++i) v += c.coef[i] * c.value[i];
      out(j, k, 0) = v;
    }
  return out;
}

double convex_combination_min_coefficient(const StateField& dev, const wbkt::ScalarModel& model, double qt,
                                          const SchemeConfig& cfg, double dt) {
  const Grid2D& g = dev.grid();
  double lo = INFINITY;
  for (int k = 0; k < g.ny(); ++k)
    for (int j = 0; j < g.nx(); ++j) {
      const Combination c = combination(dev, model, qt, cfg, dt, j, k);
      for (double a : c.coef) lo = std::min(lo, a);
    }
  return lo;
}

}  // namespace wbkt_ref
