#include <benchmark/benchmark.h>

#include "mindisp/adjoint.hpp"
#include "mindisp/descent.hpp"
#include "mindisp/models.hpp"
#include "mindisp/parallel.hpp"

using namespace mindisp;

namespace {

const StreamId kId{StreamPurpose::Diagnostic, 0, 0, 0};

void BM_EulerMaruyamaPath(benchmark::State& state) {
  const ModelDefinition model = theta_model();
  const TimeGrid grid = TimeGrid::regular(6.0, 20, 5);
  EnsembleControl u = EnsembleControl::zeros(grid, 4);
  u.coeffs.setConstant(0.1);
  Vec x0(2);
  x0 << 3.14, -1.5;

  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        simulate_terminal(model, grid, u, 0.0, x0, seed++, kId));
  }
  state.SetItemsProcessed(state.iterations() * grid.intervals() *
                          grid.substeps_per_knot);
}
BENCHMARK(BM_EulerMaruyamaPath);

void BM_AdjointValue(benchmark::State& state) {
  const int n_paths = static_cast<int>(state.range(0));
  const ModelDefinition model = theta_model();
  const TimeGrid grid = TimeGrid::regular(6.0, 20, 5);
  const EnsembleControl u = EnsembleControl::zeros(grid, 4);
  const CostFunction cost = spike_cost(1);
  Vec x(2);
  x << 3.14, -1.5;

  par::set_max_threads(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        estimate_p(model, grid, u, 3.0, x, n_paths, cost, 1, kId));
  }
  state.SetItemsProcessed(state.iterations() * n_paths);
}
BENCHMARK(BM_AdjointValue)->Arg(10)->Arg(100);

void BM_AdjointGradientStencil(benchmark::State& state) {
  const ModelDefinition model = theta_model();
  const TimeGrid grid = TimeGrid::regular(6.0, 20, 5);
  const EnsembleControl u = EnsembleControl::zeros(grid, 4);
  const CostFunction cost = spike_cost(1);
  Vec x(2);
  x << 3.14, -1.5;

  par::set_max_threads(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        estimate_grad_p(model, grid, u, 3.0, x, 100, cost, 1, kId));
  }
}
BENCHMARK(BM_AdjointGradientStencil);

void BM_SynthesisSweep(benchmark::State& state) {
  const ModelDefinition model = theta_model();
  const TimeGrid grid = TimeGrid::regular(1.0, 20, 5);
  const EnsembleControl u0 = EnsembleControl::zeros(grid, 4);
  const ControlSpace space = ControlSpace::penalty(4, 0.7);
  DescentConfig cfg;
  cfg.adjoint_paths = 50;
  cfg.synthesis_particles = 1;
  cfg.seed = 1;

  par::set_max_threads(1);
  std::uint32_t iteration = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ks_synthesize(model, grid, u0, spike_cost(1), space, cfg, iteration++));
  }
  state.SetItemsProcessed(state.iterations() * grid.intervals());
}
BENCHMARK(BM_SynthesisSweep);

}  // namespace

BENCHMARK_MAIN();
