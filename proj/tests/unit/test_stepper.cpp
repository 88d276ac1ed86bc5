#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "deadcore/errors.hpp"
#include "deadcore/stepper.hpp"

namespace {

using namespace deadcore;
using std::numbers::pi;

GridSpec line(int cells, double length = 1.0) {
  GridSpec g;
  g.dim = 1;
  g.lengths = {length, 1.0};
  g.cells = {cells, 1};
  return g;
}

GridSpec box(int nx, int ny) {
  GridSpec g;
  g.dim = 2;
  g.lengths = {1.0, 1.0};
  g.cells = {nx, ny};
  return g;
}

ModelSpec heat_model() {
  ModelSpec m;
  m.diffusion = LinearDiffusion{1.0};
  m.sensitivity = ConstantSensitivity{0.0};
  return m;
}

ModelSpec porous_taxis(double chi) {
  ModelSpec m;
  m.diffusion = PorousMedium{2.0};
  m.sensitivity = ConstantSensitivity{chi};
  return m;
}

Field with_values(const GridSpec& g, std::vector<double> values) {
  Field f(g);
  f.set_interior(values);
  return apply_neumann_ghosts(f);
}

TEST(ComputeDt, HeatFormula) {
  StepperConfig cfg;
  cfg.cfl_safety = 0.5;
  cfg.dt_max = 1.0;
  cfg.t_end = 10.0;
  const GridSpec g = line(10);
  SimState s{Field(g, 1.0), Field(g, 1.0), 0.0, 0};
  EXPECT_DOUBLE_EQ(compute_dt(s, heat_model(), cfg), 0.5 * 0.01 / 2.0);
}

TEST(ComputeDt, DegenerateStateAllowsLargerSteps) {
  StepperConfig cfg;
  cfg.dt_max = 1.0;
  cfg.t_end = 10.0;
  const GridSpec g = line(16);
  const ModelSpec pm = porous_taxis(0.0);
  SimState small{Field(g, 1e-3), Field(g, 1.0), 0.0, 0};
  SimState large{Field(g, 2.0), Field(g, 1.0), 0.0, 0};
  EXPECT_GT(compute_dt(small, pm, cfg), compute_dt(large, pm, cfg));
}

TEST(ComputeDt, CappedByDtMaxAndRemainingTime) {
  StepperConfig cfg;
  cfg.dt_max = 1e-5;
  cfg.t_end = 1.0;
  const GridSpec g = line(8);
  SimState s{Field(g, 1e-6), Field(g, 1.0), 0.0, 0};
  EXPECT_LE(compute_dt(s, porous_taxis(1.0), cfg), 1e-5);
  cfg.dt_max = 1.0;
  s.t = 1.0 - 1e-9;
  EXPECT_NEAR(compute_dt(s, porous_taxis(1.0), cfg), 1e-9, 1e-15);
}

TEST(ComputeDt, DriftTightensTheStep) {
  StepperConfig cfg;
  cfg.dt_max = 1.0;
  cfg.t_end = 10.0;
  const GridSpec g = line(16);
  SimState flat{Field(g, 1.0), Field(g, 1.0), 0.0, 0};
  SimState steep{Field(g, 1.0), sample(g, [](double x, double) { return 5.0 * x; }), 0.0, 0};
  EXPECT_LT(compute_dt(steep, porous_taxis(2.0), cfg), compute_dt(flat, porous_taxis(2.0), cfg));
}

TEST(ComputeDt, NonFiniteStateThrows) {
  StepperConfig cfg;
  const GridSpec g = line(8);
  SimState s{Field(g, 1.0), Field(g, 1.0), 0.0, 0};
  s.u(3) = std::nan("");
  EXPECT_THROW(compute_dt(s, heat_model(), cfg), NonFiniteError);
}

TEST(StepU, ConstantStateIsEquilibrium) {
  const GridSpec g = box(6, 6);
  SimState s{apply_neumann_ghosts(Field(g, 0.7)), apply_neumann_ghosts(Field(g, 2.0)), 0.0, 0};
  const Field next = step_u(s, porous_taxis(3.0), 1e-3);
  next.for_each_cell([&](int i, int j) { EXPECT_EQ(next(i, j), 0.7); });
}

TEST(StepU, ReducesToExplicitHeatStencil) {
  // h = 0.25, dt = 0.01: hand-evaluated u + dt/h^2 (u_{i-1} - 2u_i + u_{i+1})
  // with reflected ends.
  const GridSpec g = line(4);
  SimState s{with_values(g, {1.0, 2.0, 3.0, 5.0}), apply_neumann_ghosts(Field(g, 1.0)), 0.0, 0};
  const Field next = step_u(s, heat_model(), 0.01);
  EXPECT_NEAR(next(0), 1.16, 1e-14);
  EXPECT_NEAR(next(1), 2.0, 1e-14);
  EXPECT_NEAR(next(2), 3.16, 1e-14);
  EXPECT_NEAR(next(3), 4.68, 1e-14);
}

TEST(StepU, PureDriftIsUpwindTowardHigherSignal) {
  // D == 0, S == 1; mass in cell 0 drifts right into cell 1 across the
  // single face where v jumps. Flux = -u_L S (v_R - v_L)/h = -4; the update
  // moves dt/h * 4 = 0.16 of mass density across.
  ModelSpec m;
  m.diffusion = CustomDiffusion({{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}});
  m.sensitivity = ConstantSensitivity{1.0};
  const GridSpec g = line(4);
  SimState s{with_values(g, {1.0, 0.0, 0.0, 0.0}), with_values(g, {0.0, 1.0, 1.0, 1.0}), 0.0, 0};
  const Field next = step_u(s, m, 0.01);
  EXPECT_NEAR(next(0), 0.84, 1e-14);
  EXPECT_NEAR(next(1), 0.16, 1e-14);
  EXPECT_EQ(next(2), 0.0);
  EXPECT_EQ(next(3), 0.0);
  EXPECT_NEAR(integrate(next), integrate(s.u), 1e-15);
}

TEST(StepU, OversizedStepIsCflViolation) {
  const GridSpec g = line(8);
  SimState s{with_values(g, {1, 0, 1, 0, 1, 0, 1, 0}), apply_neumann_ghosts(Field(g, 1.0)), 0.0, 0};
  EXPECT_THROW(step_u(s, heat_model(), 1.0), CflViolation);
}

TEST(StepU, LogisticSourceAddsMass) {
  ModelSpec m = heat_model();
  m.source = LogisticSource{1.0, 2.0};
  const GridSpec g = line(8);
  SimState s{apply_neumann_ghosts(Field(g, 1.0)), apply_neumann_ghosts(Field(g, 1.0)), 0.0, 0};
  const Field next = step_u(s, m, 0.01);
  next.for_each_cell([&](int i, int) { EXPECT_NEAR(next(i), 1.0 + 0.01 * 0.5, 1e-15); });
}

TEST(StepV, NoConsumptionNoChange) {
  for (const GridSpec& g : {line(8), box(6, 6)}) {
    SimState s{apply_neumann_ghosts(Field(g, 0.0)), apply_neumann_ghosts(Field(g, 1.3)), 0.0, 0};
    const Field next = step_v(s, porous_taxis(1.0), 0.1);
    next.for_each_cell([&](int i, int j) { EXPECT_NEAR(next(i, j), 1.3, 1e-14); });
  }
}

TEST(StepV, HomogeneousConsumptionDecay) {
  const double dt = 0.05, ubar = 2.0, c = 0.8;
  for (const GridSpec& g : {line(8), box(6, 6)}) {
    SimState s{apply_neumann_ghosts(Field(g, ubar)), apply_neumann_ghosts(Field(g, c)), 0.0, 0};
    const Field next = step_v(s, porous_taxis(1.0), dt);
    next.for_each_cell([&](int i, int j) { EXPECT_NEAR(next(i, j), c / (1.0 + dt * ubar), 1e-12); });
  }
}

TEST(StepV, KellerSegelHomogeneousStep) {
  ModelSpec m = porous_taxis(1.0);
  m.signal_mode = SignalMode::KellerSegel;
  const double dt = 0.1;
  const GridSpec g = line(8);
  SimState s{apply_neumann_ghosts(Field(g, 2.0)), apply_neumann_ghosts(Field(g, 0.5)), 0.0, 0};
  const Field next = step_v(s, m, dt);
  // (1 + dt) v' = v + dt u
  next.for_each_cell([&](int i, int) { EXPECT_NEAR(next(i), (0.5 + dt * 2.0) / (1.0 + dt), 1e-14); });
}

TEST(StepV, NonnegativeAndMaxPrincipleOnRandomData) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const GridSpec g = trial % 2 == 0 ? line(32) : box(12, 12);
    Field u(g), v(g);
    u.for_each_cell([&](int i, int j) { u(i, j) = 3.0 * unit(rng); });
    v.for_each_cell([&](int i, int j) { v(i, j) = unit(rng) < 0.2 ? 0.0 : unit(rng); });
    SimState s{apply_neumann_ghosts(u), apply_neumann_ghosts(v), 0.0, 0};
    const double dt = 1e-4 + 0.1 * unit(rng);
    const Field next = step_v(s, porous_taxis(1.0), dt);
    EXPECT_GE(next.min(), -1e-12);
    EXPECT_LE(next.max(), v.max() + 1e-12);
  }
}

TEST(StepV, NonFiniteSignalIsReported) {
  const GridSpec g = box(8, 8);
  Field v = sample(g, [](double x, double y) { return 1.0 + x * y; });
  v(2, 3) = std::nan("");
  SimState s{apply_neumann_ghosts(Field(g, 1.0)), v, 0.0, 0};
  EXPECT_THROW(step_v(s, porous_taxis(1.0), 0.1), NonFiniteError);
}

StepperConfig quick_config(double t_end) {
  StepperConfig cfg;
  cfg.t_end = t_end;
  cfg.dt_max = 1.0;
  return cfg;
}

TEST(Run, HeatFlowMatchesClosedForm) {
  const GridSpec g = line(64);
  const Field u0 = sample(g, [](double x, double) { return 1.0 + 0.5 * std::cos(pi * x); });
  const Field v0(g, 1.0);
  const double T = 0.05;
  const RunResult res = run(u0, v0, heat_model(), quick_config(T), ProbeConfig{});
  ASSERT_EQ(res.reason, ExitReason::Completed);
  EXPECT_EQ(res.final_state.t, T);
  double err = 0.0;
  res.final_state.u.for_each_cell([&](int i, int) {
    const double exact = 1.0 + 0.5 * std::exp(-pi * pi * T) * std::cos(pi * g.center(0, i));
    err = std::max(err, std::abs(res.final_state.u(i) - exact));
  });
  const double h = g.spacing(0);
  EXPECT_LT(err, 2.0 * h * h);
}

TEST(Run, HomogeneousConsumptionFollowsExponentialDecay) {
  const GridSpec g = line(16);
  StepperConfig cfg = quick_config(0.2);
  cfg.dt_max = 1e-3;
  const RunResult res = run(Field(g, 1.0), Field(g, 0.6), porous_taxis(1.0), cfg, ProbeConfig{});
  ASSERT_EQ(res.reason, ExitReason::Completed);
  for (const auto& r : res.series.records()) {
    EXPECT_NEAR(r.sup_v, 0.6 * std::exp(-r.t), 0.6 * 1e-3);
    EXPECT_NEAR(r.min_u, 1.0, 1e-12);
  }
}

TEST(Run, PositiveDataStaysPositiveAndConservesMass) {
  const GridSpec g = line(48);
  const Field u0 = sample(g, [](double x, double) { return 0.05 + std::exp(-50.0 * (x - 0.3) * (x - 0.3)); });
  const Field v0 = sample(g, [](double x, double) { return 1.0 + std::cos(pi * x); });
  const RunResult res = run(u0, v0, porous_taxis(3.0), quick_config(0.2), ProbeConfig{});
  ASSERT_EQ(res.reason, ExitReason::Completed);
  const double m0 = integrate(u0);
  const double v_top = v0.max();
  for (const auto& r : res.series.records()) {
    EXPECT_GT(r.min_u, 0.0);
    EXPECT_EQ(r.deadcore_cells, 0);
    EXPECT_LE(std::abs(r.mass_u - m0), 1e-10 * m0);
    EXPECT_LE(r.sup_v, v_top + 1e-12);
  }
}

TEST(Run, SymmetricDataGiveSymmetricTrajectories) {
  const GridSpec g1 = line(40);
  const auto bump = [](double x, double) { return 0.2 + std::exp(-30.0 * (x - 0.5) * (x - 0.5)); };
  const auto valley = [](double x, double) { return 1.0 - 0.5 * std::exp(-10.0 * (x - 0.5) * (x - 0.5)); };
  const RunResult r1 = run(sample(g1, bump), sample(g1, valley), porous_taxis(2.0), quick_config(0.1), ProbeConfig{});
  ASSERT_EQ(r1.reason, ExitReason::Completed);
  for (const auto& snap : r1.trajectory) {
    for (int i = 0; i < 20; ++i) EXPECT_NEAR(snap.u(i), snap.u(39 - i), 1e-10);
  }

  const GridSpec g2 = box(16, 16);
  const auto bump2 = [](double x, double y) {
    return 0.2 + std::exp(-30.0 * ((x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5)));
  };
  const auto valley2 = [](double x, double y) { return 1.0 + 0.3 * std::cos(pi * x) * std::cos(pi * y); };
  const RunResult r2 = run(sample(g2, bump2), sample(g2, valley2), porous_taxis(1.0), quick_config(0.02),
                           ProbeConfig{});
  ASSERT_EQ(r2.reason, ExitReason::Completed);
  for (const auto& snap : r2.trajectory) {
    for (int j = 0; j < 16; ++j) {
      for (int i = 0; i < 16; ++i) {
        EXPECT_NEAR(snap.u(i, j), snap.u(15 - i, 15 - j), 1e-10);
        EXPECT_NEAR(snap.u(i, j), snap.u(j, i), 1e-10);
      }
    }
  }
}

TEST(Run, BlowUpThresholdAlreadyExceeded) {
  const GridSpec g = line(16);
  StepperConfig cfg = quick_config(1.0);
  cfg.blowup_threshold = 1.0;
  const Field u0 = sample(g, [](double x, double) { return 1.5 + 0.5 * std::cos(pi * x); });
  const RunResult res = run(u0, Field(g, 1.0), porous_taxis(1.0), cfg, ProbeConfig{});
  EXPECT_EQ(res.reason, ExitReason::BlowUp);
  EXPECT_EQ(res.fail_step, 0);
  EXPECT_EQ(res.final_state.t, 0.0);
}

TEST(Run, DeadCoreDetectionTerminates) {
  const GridSpec g = line(16);
  StepperConfig cfg = quick_config(1.0);
  cfg.deadcore_epsilon = 0.5;
  Field u0(g, 1.0);
  u0(4) = 0.25;
  const RunResult res = run(u0, Field(g, 1.0), porous_taxis(1.0), cfg, ProbeConfig{});
  EXPECT_EQ(res.reason, ExitReason::DeadCore);
  ASSERT_FALSE(res.series.empty());
  EXPECT_EQ(res.series.back().deadcore_cells, 1);
}

TEST(Run, SnapshotsLandOnRequestedTimes) {
  const GridSpec g = line(16);
  ProbeConfig probes;
  probes.snapshot_times = {0.0, 0.013, 0.05};
  const RunResult res = run(Field(g, 1.0), Field(g, 1.0), porous_taxis(1.0), quick_config(0.05), probes);
  ASSERT_EQ(res.snapshots.size(), 3u);
  EXPECT_EQ(res.snapshots[0].t, 0.0);
  EXPECT_EQ(res.snapshots[1].t, 0.013);
  EXPECT_EQ(res.snapshots[2].t, 0.05);
}

TEST(Run, RejectsNegativeInitialData) {
  const GridSpec g = line(8);
  Field u0(g, 1.0);
  u0(2) = -1.0;
  EXPECT_THROW(run(u0, Field(g, 1.0), porous_taxis(1.0), quick_config(1.0), ProbeConfig{}), std::invalid_argument);
}

}  // namespace
