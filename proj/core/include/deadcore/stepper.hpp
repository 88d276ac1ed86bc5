#pragma once

#include <string>
#include <vector>

#include "deadcore/grid.hpp"
#include "deadcore/model.hpp"
#include "deadcore/probes.hpp"

namespace deadcore {

struct SimState {
  Field u;  // cell density
  Field v;  // signal concentration
  double t = 0.0;
  long step = 0;
};

struct StepperConfig {
  double cfl_safety = 0.4;
  double dt_max = 1e-2;
  double blowup_threshold = 1e6;
  double deadcore_epsilon = 1e-12;
  double t_end = 1.0;
  /// Relative residual target for the 2-D conjugate-gradient v solve.
  double solver_tolerance = 1e-12;
  /// Oracle runs with compactly supported data switch dead-core exits off.
  bool detect_deadcore = true;

  bool operator==(const StepperConfig&) const = default;
};

void validate_stepper_config(const StepperConfig& cfg);

struct ProbeConfig {
  int record_every = 10;
  std::vector<double> snapshot_times;
  /// Keep u at every probe record for certificate post-processing.
  bool keep_trajectory = true;

  bool operator==(const ProbeConfig&) const = default;
};

enum class ExitReason { Completed, BlowUp, DeadCore, CflViolation, SolverFailure, NonFinite };

std::string to_string(ExitReason reason);

struct Snapshot {
  double t = 0.0;
  Field u;
  Field v;
};

struct RunResult {
  ExitReason reason = ExitReason::Completed;
  long fail_step = -1;  // step index of the offending step, -1 when Completed
  std::string message;
  SimState final_state;
  ProbeSeries series;
  std::vector<TimedField> trajectory;
  std::vector<Snapshot> snapshots;
  double largest_dt = 0.0;
};

/// Explicit step bound
///   safety * h^2 / (2 dim (max D(u) + h max_face S(u_up) |Δv| / h))
/// capped by dt_max and by the time left to t_end. Throws NonFiniteError
/// on nonfinite state values.
double compute_dt(const SimState& state, const ModelSpec& spec, const StepperConfig& cfg);

/// Flux-form update of u with Kirchhoff diffusive flux [Φ(u_R) - Φ(u_L)]/h
/// and first-order upwind taxis flux. Throws CflViolation if a cell turns
/// negative. Expects ghosts applied; returns a field with ghosts applied.
Field step_u(const SimState& state, const ModelSpec& spec, double dt);

/// Backward-Euler signal step with reaction frozen at the current u:
///   (I - dt Δ_h + dt diag(u)) v' = v           (consumption)
///   (I - dt Δ_h + dt I) v' = v + dt u           (Keller-Segel)
/// 1-D systems are solved by tridiagonal elimination, 2-D systems by
/// Jacobi-preconditioned conjugate gradients. Throws SolverError when CG
/// misses `tolerance` within 10 * cells iterations.
Field step_v(const SimState& state, const ModelSpec& spec, double dt, double tolerance = 1e-12);

/// Advances (u0, v0) to cfg.t_end or until blow-up / dead-core / numerical
/// failure. Throws std::invalid_argument for negative or mismatched data.
RunResult run(const Field& u0, const Field& v0, const ModelSpec& spec, const StepperConfig& cfg,
              const ProbeConfig& probes);

}  // namespace deadcore
