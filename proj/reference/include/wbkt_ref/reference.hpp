#pragma once

#include "wbkt/fullkt.hpp"
#include "wbkt/grid.hpp"
#include "wbkt/models.hpp"

/// Serial, loop-by-loop transcriptions of the schemes.  They share no code with
/// the reconstruction, fan or semi-discrete kernels and exist to cross-check them.
namespace wbkt_ref {

using wbkt::Background;
using wbkt::SchemeConfig;
using wbkt::StateField;

// One fully-discrete step on interior cells; ghosts of `dev` must be filled, ghost width >= 3.
template <class Model>
StateField step_fully_discrete(const StateField& dev, const Background<Model>& bg, const Model& model,
                               const SchemeConfig& cfg, double dt);

// d(dq)/dt on interior cells.
template <class Model>
StateField semi_discrete_rhs(const StateField& dev, const Background<Model>& bg, const Model& model,
                             const SchemeConfig& cfg);

/// Forward Euler for a homogeneous scalar law written as a combination of the
/// one-sided values E, W, N, S with explicit coefficients.  q~ must be the
/// constant `qt`; then the combination is algebraically the forward Euler step.
StateField convex_combination_step(const StateField& dev, const wbkt::ScalarModel& model, double qt,
                                   const SchemeConfig& cfg, double dt);

// Smallest coefficient of the combination over interior cells (>= 0 under the 1/8 CFL bound).
double convex_combination_min_coefficient(const StateField& dev, const wbkt::ScalarModel& model, double qt,
                                          const SchemeConfig& cfg, double dt);

}  // namespace wbkt_ref
