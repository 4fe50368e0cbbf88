#include "wbkt/semikt.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wbkt/errors.hpp"
#include "wbkt/parallel.hpp"

namespace wbkt {

template <class Model>
Vec<Model::N> numerical_flux(Axis axis, const Vec<Model::N>& dq_left, const Vec<Model::N>& dq_right,
                             const Vec<Model::N>& qt, double a_plus, double a_minus, const Model& model,
                             double speed_floor) {
  const auto f_qt = model.flux(qt, axis);
  const auto fl = model.flux(dq_left + qt, axis) - f_qt;
  if (a_plus - a_minus < 1e-300) {
    if (dq_left == dq_right) return fl;
    if (!(speed_floor > 0.0)) throw DivisionByZeroSpeed("numerical_flux: a+ == a- with distinct states");
    a_plus = std::fmax(a_plus, 0.5 * speed_floor);
    a_minus = std::fmin(a_minus, -0.5 * speed_floor);
  }
  const auto fr = model.flux(dq_right + qt, axis) - f_qt;
  const double inv = 1.0 / (a_plus - a_minus);
  return (a_plus * inv) * fl - (a_minus * inv) * fr + (a_plus * a_minus * inv) * (dq_right - dq_left);
}

namespace {

// Interface fluxes on the interior faces: hx(j, k) at x_{j+1/2} for j in [-1, nx).
template <class Model, class FluxFn>
void accumulate_divergence(const Grid2D& g, StateField& out, FluxFn&& face_flux) {
  constexpr std::size_t N = Model::N;
  Array2D<Vec<N>> hx(-1, g.nx(), 0, g.ny());
  Array2D<Vec<N>> hy(0, g.nx(), -1, g.ny());
  detail::parallel_for_2d(-1, g.nx(), 0, g.ny(), [&](int j, int k) { hx(j, k) = face_flux(Axis::x, j, k); });
  detail::parallel_for_2d(0, g.nx(), -1, g.ny(), [&](int j, int k) { hy(j, k) = face_flux(Axis::y, j, k); });
  const double idx = 1.0 / g.dx(), idy = 1.0 / g.dy();
  detail::parallel_for_2d(0, g.nx(), 0, g.ny(), [&](int j, int k) {
    const Vec<N> r = (-idx) * (hx(j, k) - hx(j - 1, k)) - idy * (hy(j, k) - hy(j, k - 1));
    out.set(j, k, out.template get<N>(j, k) + r);
  });
}

}  // namespace

CflReport make_cfl_report(double max_dfx, double max_dfy, double dx, double dy, double dt) {
  CflReport r;
  r.lambda = dt / dx;
  r.mu = dt / dy;
  r.max_dfx = max_dfx;
  r.max_dfy = max_dfy;
  r.satisfied = r.courant() <= 0.125 + 1e-14;
  return r;
}

namespace {

// Reconstruction shared by the right-hand side and the CFL probe of one stage.
struct Stage {
  InterfaceStates dev;
  InterfaceStates full;
};

template <class Model>
Stage reconstruct_stage(const StateField& dev, const Background<Model>& bg, const SchemeConfig& cfg) {
  Stage st{interface_states(dev, mc_theta_slopes(dev, cfg.theta)), {}};
  st.full = full_interface_states(st.dev, bg);
  return st;
}

template <class Model>
StateField rhs_from_stage(const Stage& st, const StateField& dev, const Background<Model>& bg, const Model& model,
                          const SchemeConfig& cfg) {
  constexpr std::size_t N = Model::N;
  const Grid2D& g = dev.grid();
  const InterfaceStates& iface = st.dev;
  const SpeedField sp = local_speeds(st.full, model, cfg.semi_eps);
  StateField out(g, static_cast<int>(N));
  if (model.has_source()) {
    detail::parallel_for_2d(0, g.nx(), 0, g.ny(), [&](int j, int k) {
      out.set(j, k, model.source(dev.template get<N>(j, k), g.xc(j), g.yc(k)));
    });
  }
  accumulate_divergence<Model>(g, out, [&](Axis axis, int j, int k) {
    if (axis == Axis::x)
      return numerical_flux(Axis::x, iface.east.template get<N>(j, k), iface.west.template get<N>(j + 1, k),
                            bg.x_faces(j, k), sp.a_plus(j, k), sp.a_minus(j, k), model,
                            cfg.semi_speed_floor);
    return numerical_flux(Axis::y, iface.north.template get<N>(j, k), iface.south.template get<N>(j, k + 1),
                          bg.y_faces(j, k), sp.b_plus(j, k), sp.b_minus(j, k), model,
                          cfg.semi_speed_floor);
  });
  return out;
}

template <class Model>
CflReport cfl_from_stage(const Stage& st, const StateField& dev, const Background<Model>& bg, const Model& model,
                         double dt) {
  constexpr std::size_t N = Model::N;
  const Grid2D& g = dev.grid();
  const InterfaceStates& full = st.full;
  double mx = 0.0, my = 0.0;
  auto widen = [&](const Vec<N>& q) {
    const auto [x1, xn] = model.speed_bounds(q, Axis::x);
    const auto [y1, yn] = model.speed_bounds(q, Axis::y);
    mx = std::fmax(mx, std::fmax(std::fabs(x1), std::fabs(xn)));
    my = std::fmax(my, std::fmax(std::fabs(y1), std::fabs(yn)));
  };
  for (int k = -1; k <= g.ny(); ++k) {
    for (int j = -1; j <= g.nx(); ++j) {
      widen(dev.template get<N>(j, k) + bg.cell(j, k));
      widen(full.east.template get<N>(j, k));
      widen(full.west.template get<N>(j, k));
      widen(full.north.template get<N>(j, k));
      widen(full.south.template get<N>(j, k));
    }
  }
  return make_cfl_report(mx, my, g.dx(), g.dy(), dt);
}

}  // namespace

template <class Model>
StateField semi_discrete_rhs(const StateField& dev, const Background<Model>& bg, const Model& model,
                             const SchemeConfig& cfg) {
  return rhs_from_stage(reconstruct_stage(dev, bg, cfg), dev, bg, model, cfg);
}

template <class Model>
CflReport cfl_report(const StateField& dev, const Background<Model>& bg, const Model& model,
                     const SchemeConfig& cfg, double dt) {
  return cfl_from_stage(reconstruct_stage(dev, bg, cfg), dev, bg, model, dt);
}

Integrator parse_integrator(const std::string& name) {
  if (name == "forward_euler") return Integrator::forward_euler;
  if (name == "ssp_rk2") return Integrator::ssp_rk2;
  throw ConfigError("unknown integrator '" + name + "' (expected forward_euler|ssp_rk2)");
}

std::string to_string(Integrator m) { return m == Integrator::forward_euler ? "forward_euler" : "ssp_rk2"; }

namespace {

void axpy_interior(StateField& y, double a, const StateField& x) {
  const Grid2D& g = y.grid();
  for (int k = 0; k < g.ny(); ++k)
    for (int j = 0; j < g.nx(); ++j) {
      auto yc = y.cell(j, k);
      auto xc = x.cell(j, k);
      for (std::size_t c = 0; c < yc.size(); ++c) yc[c] += a * xc[c];
    }
}

}  // namespace

template <class Model>
Trajectory integrate(const StateField& dev0, const Background<Model>& bg, const Model& model,
                     const SchemeConfig& cfg, double t_end, const IntegrateOptions& opts) {
  if (!(t_end >= 0.0)) throw ConfigError("integrate: t_end must be >= 0");
  if (!(opts.cfl > 0.0)) throw ConfigError("integrate: cfl must be > 0");
  if (opts.dt_rule == DtRule::max_principle && opts.cfl > 0.125)
    throw ConfigError("integrate: the max_principle rule needs cfl <= 1/8");
  const Grid2D& g = dev0.grid();
  Trajectory tr;
  tr.method = opts.method;
  tr.final_state = dev0;
  StateField& u = tr.final_state;
  fill_ghosts(u, opts.bc, model);
  if (opts.keep_history) tr.history.push_back(u);
  while (tr.t < t_end) {
    if (opts.max_steps > 0 && tr.steps >= opts.max_steps) break;
    double dt = 0.0;
    const Stage st = reconstruct_stage(u, bg, cfg);
    const CflReport probe = cfl_from_stage(st, u, bg, model, 1.0);
    if (opts.dt_rule == DtRule::max_principle) {
      const double rx = probe.max_dfx > 0.0 ? g.dx() / probe.max_dfx : INFINITY;
      const double ry = probe.max_dfy > 0.0 ? g.dy() / probe.max_dfy : INFINITY;
      dt = opts.cfl * std::fmin(rx, ry);
    } else {
      const SpeedField sp = local_speeds(st.full, model, 0.0);
      const double sx = sp.max_x(), sy = sp.max_y();
      dt = opts.cfl * std::fmin(sx > 0.0 ? g.dx() / sx : INFINITY, sy > 0.0 ? g.dy() / sy : INFINITY);
    }
    if (!std::isfinite(dt) || tr.t + dt >= t_end) dt = t_end - tr.t;
    tr.cfl.push_back(make_cfl_report(probe.max_dfx, probe.max_dfy, g.dx(), g.dy(), dt));

    const StateField k1 = rhs_from_stage(st, u, bg, model, cfg);
    if (opts.method == Integrator::forward_euler) {
      axpy_interior(u, dt, k1);
    } else {
      StateField u1 = u;
      axpy_interior(u1, dt, k1);
      fill_ghosts(u1, opts.bc, model);
      const StateField k2 = semi_discrete_rhs(u1, bg, model, cfg);
      axpy_interior(u1, dt, k2);
      for (int k = 0; k < g.ny(); ++k)
        for (int j = 0; j < g.nx(); ++j) {
          auto a = u.cell(j, k);
          auto b = u1.cell(j, k);
          for (std::size_t c = 0; c < a.size(); ++c) a[c] = 0.5 * a[c] + 0.5 * b[c];
        }
    }
    if (!u.interior_finite()) {
      std::ostringstream os;
      os << "integrate: non-finite state after step " << tr.steps + 1;
      throw SolverError(os.str());
    }
    fill_ghosts(u, opts.bc, model);
    tr.t = (dt == t_end - tr.t) ? t_end : tr.t + dt;
    ++tr.steps;
    tr.dts.push_back(dt);
    if (opts.keep_history) tr.history.push_back(u);
  }
  return tr;
}

MaxPrincipleReport max_principle_monitor(const std::vector<StateField>& trajectory,
                                         const std::vector<CflReport>& cfl, Integrator method) {
  MaxPrincipleReport r;
  r.certified = true;
  if (method != Integrator::forward_euler) {
    r.certified = false;
    r.reason = "the maximum principle is only established for forward Euler";
  }
  if (!trajectory.empty() && trajectory.front().n_comp() != 1) {
    r.certified = false;
    r.reason = "the maximum principle applies to scalar fields only";
  }
  for (std::size_t i = 0; i < cfl.size(); ++i) {
    if (!cfl[i].satisfied && r.certified) {
      r.certified = false;
      std::ostringstream os;
      os << "CFL condition (<= 1/8) violated at step " << i + 1 << " (courant " << cfl[i].courant() << ")";
      r.reason = os.str();
    }
  }
  auto interior_max = [](const StateField& f) {
    const Grid2D& g = f.grid();
    double m = -INFINITY;
    for (int k = 0; k < g.ny(); ++k)
      for (int j = 0; j < g.nx(); ++j) m = std::fmax(m, f(j, k, 0));
    return m;
  };
  for (std::size_t i = 1; i < trajectory.size(); ++i) {
    const double prev = interior_max(trajectory[i - 1]);
    const double next = interior_max(trajectory[i]);
    ++r.steps_checked;
    const double inc = next - prev;
    if (inc > 1e-14 * std::fmax(1.0, std::fabs(prev))) {
      ++r.violations;
      if (r.first_violation_step < 0) r.first_violation_step = static_cast<int>(i);
    }
    r.worst_increase = std::fmax(r.worst_increase, inc);
  }
  return r;
}

template <class Model>
StateField stationary_residual(const Background<Model>& bg, const Model& model, const SchemeConfig& cfg) {
  constexpr std::size_t N = Model::N;
  const StateField& q = bg.cells;
  const Grid2D& g = q.grid();
  const SlopeField slopes = mc_theta_slopes(q, cfg.theta);
  const InterfaceStates iface = interface_states(q, slopes);
  const SpeedField sp = local_speeds(iface, model, cfg.semi_eps);
  StateField out(g, static_cast<int>(N));
  const Vec<N> zero{};
  accumulate_divergence<Model>(g, out, [&](Axis axis, int j, int k) {
    if (axis == Axis::x)
      return numerical_flux(Axis::x, iface.east.template get<N>(j, k), iface.west.template get<N>(j + 1, k), zero,
                            sp.a_plus(j, k), sp.a_minus(j, k), model, cfg.semi_speed_floor);
    return numerical_flux(Axis::y, iface.north.template get<N>(j, k), iface.south.template get<N>(j, k + 1), zero,
                          sp.b_plus(j, k), sp.b_minus(j, k), model, cfg.semi_speed_floor);
  });
  return out;
}

#define WBKT_INSTANTIATE_SEMIKT(M)                                                                           \
  template Vec<M::N> numerical_flux<M>(Axis, const Vec<M::N>&, const Vec<M::N>&, const Vec<M::N>&, double,   \
                                       double, const M&, double);                                           \
  template StateField semi_discrete_rhs<M>(const StateField&, const Background<M>&, const M&,                \
                                           const SchemeConfig&);                                            \
  template CflReport cfl_report<M>(const StateField&, const Background<M>&, const M&, const SchemeConfig&,   \
                                   double);                                                                 \
  template Trajectory integrate<M>(const StateField&, const Background<M>&, const M&, const SchemeConfig&,   \
                                   double, const IntegrateOptions&);                                        \
  template StateField stationary_residual<M>(const Background<M>&, const M&, const SchemeConfig&);

WBKT_INSTANTIATE_SEMIKT(EulerModel)
WBKT_INSTANTIATE_SEMIKT(ScalarModel)

}  // namespace wbkt
