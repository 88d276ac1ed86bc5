#include <cmath>
#include <numbers>

#include <benchmark/benchmark.h>

#include "deadcore/stepper.hpp"

namespace {

using namespace deadcore;

GridSpec grid(int dim, int n) {
  GridSpec g;
  g.dim = dim;
  g.lengths = {1.0, 1.0};
  g.cells = {n, dim == 2 ? n : 1};
  return g;
}

SimState state(const GridSpec& g) {
  const double pi = std::numbers::pi;
  return {sample(g, [&](double x, double y) { return 1.0 + 0.5 * std::cos(pi * x) * std::cos(pi * y); }),
          sample(g, [&](double x, double y) { return 1.0 + 0.5 * std::cos(2 * pi * x) + 0.2 * y; }), 0.0, 0};
}

ModelSpec model() {
  ModelSpec m;
  m.diffusion = PorousMedium{2.0};
  m.sensitivity = ConstantSensitivity{1.0};
  return m;
}

void BM_StepU(benchmark::State& st) {
  const GridSpec g = grid(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  const SimState s = state(g);
  const ModelSpec m = model();
  StepperConfig cfg;
  const double dt = compute_dt(s, m, cfg);
  for (auto _ : st) benchmark::DoNotOptimize(step_u(s, m, dt));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(g.cell_count()));
}

void BM_StepV(benchmark::State& st) {
  const GridSpec g = grid(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  const SimState s = state(g);
  const ModelSpec m = model();
  StepperConfig cfg;
  const double dt = compute_dt(s, m, cfg);
  for (auto _ : st) benchmark::DoNotOptimize(step_v(s, m, dt));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(g.cell_count()));
}

void BM_ComputeDt(benchmark::State& st) {
  const GridSpec g = grid(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  const SimState s = state(g);
  const ModelSpec m = model();
  StepperConfig cfg;
  for (auto _ : st) benchmark::DoNotOptimize(compute_dt(s, m, cfg));
}

BENCHMARK(BM_StepU)->Args({1, 128})->Args({2, 64});
BENCHMARK(BM_StepV)->Args({1, 128})->Args({2, 64});
BENCHMARK(BM_ComputeDt)->Args({1, 128})->Args({2, 64});

}  // namespace
BENCHMARK_MAIN();
