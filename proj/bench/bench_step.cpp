// Parallel kernels against the serial reference transcriptions.

#include <benchmark/benchmark.h>

#include <random>

#include "wbkt/harness.hpp"
#include "wbkt_ref/reference.hpp"

namespace {

struct EulerCase {
  wbkt::Grid2D grid;
  wbkt::EulerModel model;
  wbkt::Background<wbkt::EulerModel> bg;
  wbkt::StateField dev;
  wbkt::SchemeConfig cfg;
  double dt = 0.0;

  explicit EulerCase(int n) : grid(wbkt::make_grid(n, n, {0, 1, 0, 1})) {
    model.grad_phi = [](double, double) { return std::array<double, 2>{1.0, 1.0}; };
    bg = wbkt::make_background<wbkt::EulerModel>(grid, [](double x, double y) {
      return wbkt::euler_to_conserved(wbkt::isothermal_equilibrium(x, y, 1.21, 1.0, 1.0, 1.0), 1.4);
    });
    dev = wbkt::StateField(grid, 4);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-0.05, 0.05);
    for (int k = grid.k_lo(); k < grid.k_hi(); ++k)
      for (int j = grid.j_lo(); j < grid.j_hi(); ++j) dev.set(j, k, wbkt::Vec<4>{u(rng), u(rng), u(rng), u(rng)});
    wbkt::fill_ghosts(dev, wbkt::BoundarySpec::all(wbkt::BcKind::outflow), model);
    dt = wbkt::compute_dt(wbkt::fully_discrete_speeds(dev, bg, model, cfg), grid, 0.45);
  }
};

void BM_FullyDiscreteStep(benchmark::State& state) {
  const EulerCase c(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(wbkt::step_fully_discrete(c.dev, c.bg, c.model, c.cfg, c.dt));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_FullyDiscreteStepReference(benchmark::State& state) {
  const EulerCase c(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(wbkt_ref::step_fully_discrete(c.dev, c.bg, c.model, c.cfg, c.dt));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_SemiDiscreteRhs(benchmark::State& state) {
  const EulerCase c(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(wbkt::semi_discrete_rhs(c.dev, c.bg, c.model, c.cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_SemiDiscreteRhsReference(benchmark::State& state) {
  const EulerCase c(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(wbkt_ref::semi_discrete_rhs(c.dev, c.bg, c.model, c.cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

}  // namespace

BENCHMARK(BM_FullyDiscreteStep)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FullyDiscreteStepReference)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SemiDiscreteRhs)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SemiDiscreteRhsReference)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
