#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wbkt/fullkt.hpp"

namespace wbkt {

/// Central-upwind flux across one interface from the two one-sided deviation
/// values and q~ at the interface midpoint.
///
/// With a+ = a- (a dead fan) and equal states the result is F(dq); with
/// distinct states the speeds are widened to +-floor/2, and floor = 0 makes
/// that case a DivisionByZeroSpeed.
template <class Model>
Vec<Model::N> numerical_flux(Axis axis, const Vec<Model::N>& dq_left, const Vec<Model::N>& dq_right,
                             const Vec<Model::N>& qt, double a_plus, double a_minus, const Model& model,
                             double speed_floor = 1e-12);

// d(dq)/dt on interior cells.  Ghost cells of `dev` must be filled.
template <class Model>
StateField semi_discrete_rhs(const StateField& dev, const Background<Model>& bg, const Model& model,
                             const SchemeConfig& cfg);

struct CflReport {
  double lambda = 0.0;  // dt/dx
  double mu = 0.0;      // dt/dy
  double max_dfx = 0.0;
  double max_dfy = 0.0;
  bool satisfied = true;

  double courant() const { return std::fmax(lambda * max_dfx, mu * max_dfy); }
};

// satisfied iff max(lambda max|F'|, mu max|G'|) <= 1/8 + 1e-14.
CflReport make_cfl_report(double max_dfx, double max_dfy, double dx, double dy, double dt);

// Wave-speed magnitudes over every cell value and one-sided interface value of the full state.
template <class Model>
CflReport cfl_report(const StateField& dev, const Background<Model>& bg, const Model& model,
                     const SchemeConfig& cfg, double dt);

enum class Integrator { forward_euler, ssp_rk2 };
Integrator parse_integrator(const std::string& name);
std::string to_string(Integrator m);

enum class DtRule {
  // dt = cfl min(dx / max(a+, -a-), dy / max(b+, -b-))
  wave_speed,
  // dt = cfl min(dx / max|F'|, dy / max|G'|) with cfl <= 1/8
  max_principle,
};

struct IntegrateOptions {
  Integrator method = Integrator::forward_euler;
  DtRule dt_rule = DtRule::wave_speed;
  double cfl = 0.45;
  BoundarySpec bc{};
  int max_steps = 0;  // 0: unlimited
  bool keep_history = false;
};

struct Trajectory {
  StateField final_state;
  double t = 0.0;
  int steps = 0;
  std::vector<double> dts;
  std::vector<CflReport> cfl;
  std::vector<StateField> history;  // initial state then one entry per step, when kept
  Integrator method = Integrator::forward_euler;
};

/// Marches dq from t = 0 to t_end; the last step is clipped to land on t_end.
template <class Model>
Trajectory integrate(const StateField& dev0, const Background<Model>& bg, const Model& model,
                     const SchemeConfig& cfg, double t_end, const IntegrateOptions& opts);

struct MaxPrincipleReport {
  bool certified = false;
  std::string reason;
  int steps_checked = 0;
  int violations = 0;
  int first_violation_step = -1;
  double worst_increase = 0.0;
};

/// Counts steps whose interior maximum exceeds the previous one by more than
/// 1e-14 max(1, |max|).  Certification needs forward Euler, a scalar field and
/// a satisfied CFL report at every step.
MaxPrincipleReport max_principle_monitor(const std::vector<StateField>& trajectory,
                                         const std::vector<CflReport>& cfl, Integrator method);

// Flux-only KT residual of q~ itself (no deviation, no source), on interior cells.
template <class Model>
StateField stationary_residual(const Background<Model>& bg, const Model& model, const SchemeConfig& cfg);

}  // namespace wbkt
