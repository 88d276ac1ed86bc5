#include "deadcore/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "deadcore/errors.hpp"

namespace deadcore {

void validate_stepper_config(const StepperConfig& cfg) {
  if (!(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0)) throw std::invalid_argument("cfl_safety must lie in (0, 1]");
  if (!(cfg.dt_max > 0.0)) throw std::invalid_argument("dt_max must be positive");
  if (!(cfg.blowup_threshold > 0.0)) throw std::invalid_argument("blowup_threshold must be positive");
  if (!(cfg.deadcore_epsilon > 0.0)) throw std::invalid_argument("deadcore_epsilon must be positive");
  if (!(cfg.t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
  if (!(cfg.solver_tolerance > 0.0)) throw std::invalid_argument("solver_tolerance must be positive");
}

std::string to_string(ExitReason reason) {
  switch (reason) {
    case ExitReason::Completed: return "completed";
    case ExitReason::BlowUp: return "blow_up";
    case ExitReason::DeadCore: return "dead_core";
    case ExitReason::CflViolation: return "cfl_violation";
    case ExitReason::SolverFailure: return "solver_failure";
    case ExitReason::NonFinite: return "non_finite";
  }
  return "unknown";
}

namespace {

// Upwind drift coefficient S(u_up) |v_R - v_L| / h for one face.
double face_drift(const ModelSpec& spec, double uL, double uR, double vL, double vR, double h) {
  const double dv = vR - vL;
  const double up = dv >= 0.0 ? uL : uR;
  return eval_S(spec, up) * std::abs(dv) / h;
}

// Total flux D∇u - u S(u) ∇v across one face, positive toward +axis.
double face_flux(const ModelSpec& spec, double phiL, double phiR, double uL, double uR, double vL, double vR,
                 double h) {
  const double dv = vR - vL;
  // Cells drift toward higher v: the upwind cell is the one the drift leaves.
  const double up = dv >= 0.0 ? uL : uR;
  return (phiR - phiL) / h - up * eval_S(spec, up) * dv / h;
}

}  // namespace

double compute_dt(const SimState& state, const ModelSpec& spec, const StepperConfig& cfg) {
  const Field& u = state.u;
  const Field& v = state.v;
  const GridSpec& g = u.grid();
  double d_max = 0.0;
  bool finite = true;
  u.for_each_cell([&](int i, int j) {
    if (!std::isfinite(u(i, j)) || !std::isfinite(v(i, j))) {
      finite = false;
      return;
    }
  });
  if (!finite) throw NonFiniteError("nonfinite value in state at step " + std::to_string(state.step));

  double a_max = 0.0;
  const double hx = g.spacing(0);
  u.for_each_cell([&](int i, int j) {
    d_max = std::max(d_max, eval_D(spec, std::max(0.0, u(i, j))));
    if (i + 1 < g.nx()) a_max = std::max(a_max, face_drift(spec, u(i, j), u(i + 1, j), v(i, j), v(i + 1, j), hx));
    if (g.dim == 2 && j + 1 < g.ny()) {
      a_max = std::max(a_max, face_drift(spec, u(i, j), u(i, j + 1), v(i, j), v(i, j + 1), g.spacing(1)));
    }
  });

  const double h = g.min_spacing();
  const double rate = 2.0 * g.dim * (d_max + h * a_max);
  double dt = rate > 0.0 ? cfg.cfl_safety * h * h / rate : cfg.dt_max;
  dt = std::min(dt, cfg.dt_max);
  const double remaining = cfg.t_end - state.t;
  if (remaining > 0.0) dt = std::min(dt, remaining);
  return dt;
}

Field step_u(const SimState& state, const ModelSpec& spec, double dt) {
  const Field& u = state.u;
  const Field& v = state.v;
  const GridSpec& g = u.grid();
  const int nx = g.nx();
  const int ny = g.ny();

  Field phi(g);
  u.for_each_cell([&](int i, int j) { phi(i, j) = eval_Phi(spec, u(i, j)); });

  Field out(g);
  const double hx = g.spacing(0);
  const double hy = g.dim == 2 ? g.spacing(1) : 1.0;
  u.for_each_cell([&](int i, int j) {
    auto flux_x = [&](int left) {
      if (left < 0 || left + 1 >= nx) return 0.0;
      return face_flux(spec, phi(left, j), phi(left + 1, j), u(left, j), u(left + 1, j), v(left, j), v(left + 1, j),
                       hx);
    };
    double div = (flux_x(i) - flux_x(i - 1)) / hx;
    if (g.dim == 2) {
      auto flux_y = [&](int lower) {
        if (lower < 0 || lower + 1 >= ny) return 0.0;
        return face_flux(spec, phi(i, lower), phi(i, lower + 1), u(i, lower), u(i, lower + 1), v(i, lower),
                         v(i, lower + 1), hy);
      };
      div += (flux_y(j) - flux_y(j - 1)) / hy;
    }
    out(i, j) = u(i, j) + dt * div + dt * eval_f(spec, u(i, j), std::max(0.0, v(i, j)));
  });

  out.for_each_cell([&](int i, int j) {
    if (out(i, j) < 0.0) {
      std::ostringstream os;
      os << "u turned negative (" << out(i, j) << ") in cell (" << i << ", " << j << ") at step " << state.step
         << " with dt = " << dt;
      throw CflViolation(os.str(), static_cast<long>(j) * nx + i);
    }
  });
  apply_neumann_ghosts_in_place(out);
  return out;
}

namespace {

// Thomas elimination for a symmetric, strictly diagonally dominant system.
std::vector<double> solve_tridiagonal(const std::vector<double>& diag, double off, std::vector<double> rhs) {
  const std::size_t n = diag.size();
  std::vector<double> c(n, 0.0);
  double denom = diag[0];
  c[0] = off / denom;
  rhs[0] /= denom;
  for (std::size_t k = 1; k < n; ++k) {
    denom = diag[k] - off * c[k - 1];
    c[k] = off / denom;
    rhs[k] = (rhs[k] - off * rhs[k - 1]) / denom;
  }
  for (std::size_t k = n - 1; k-- > 0;) rhs[k] -= c[k] * rhs[k + 1];
  return rhs;
}

}  // namespace

Field step_v(const SimState& state, const ModelSpec& spec, double dt, double tolerance) {
  const Field& u = state.u;
  const Field& v = state.v;
  const GridSpec& g = u.grid();
  const bool consumption = spec.signal_mode == SignalMode::Consumption;

  // Reaction part of the diagonal and the right-hand side.
  Field reaction(g);
  Field rhs(g);
  u.for_each_cell([&](int i, int j) {
    reaction(i, j) = consumption ? dt * u(i, j) : dt;
    rhs(i, j) = consumption ? v(i, j) : v(i, j) + dt * u(i, j);
  });

  if (g.dim == 1) {
    const int n = g.nx();
    const double k = dt / (g.spacing(0) * g.spacing(0));
    std::vector<double> diag(static_cast<std::size_t>(n));
    std::vector<double> b(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const int neighbours = (i > 0) + (i + 1 < n);
      diag[static_cast<std::size_t>(i)] = 1.0 + neighbours * k + reaction(i);
      b[static_cast<std::size_t>(i)] = rhs(i);
    }
    Field out(g);
    out.set_interior(solve_tridiagonal(diag, -k, std::move(b)));
    apply_neumann_ghosts_in_place(out);
    return out;
  }

  // 2-D: matrix-free preconditioned CG. A x = x + reaction x - dt Δ_h x.
  auto apply = [&](Field x) {
    apply_neumann_ghosts_in_place(x);
    const Field lap = laplacian(x);
    Field y(g);
    x.for_each_cell([&](int i, int j) { y(i, j) = x(i, j) * (1.0 + reaction(i, j)) - dt * lap(i, j); });
    return y;
  };
  const double kx = dt / (g.spacing(0) * g.spacing(0));
  const double ky = dt / (g.spacing(1) * g.spacing(1));
  Field inv_diag(g);
  u.for_each_cell([&](int i, int j) {
    const int nxn = (i > 0) + (i + 1 < g.nx());
    const int nyn = (j > 0) + (j + 1 < g.ny());
    inv_diag(i, j) = 1.0 / (1.0 + reaction(i, j) + nxn * kx + nyn * ky);
  });

  auto dot = [](const Field& a, const Field& b) {
    double s = 0.0;
    a.for_each_cell([&](int i, int j) { s += a(i, j) * b(i, j); });
    return s;
  };

  const double b_norm = std::sqrt(dot(rhs, rhs));
  if (!std::isfinite(b_norm)) throw NonFiniteError("nonfinite right-hand side in the signal solve");
  Field x = v;
  if (b_norm == 0.0) return Field(g, 0.0);

  Field r(g);
  const Field ax = apply(x);
  r.for_each_cell([&](int i, int j) { r(i, j) = rhs(i, j) - ax(i, j); });
  Field z(g);
  r.for_each_cell([&](int i, int j) { z(i, j) = inv_diag(i, j) * r(i, j); });
  Field p = z;
  double rz = dot(r, z);
  const long max_iter = 10L * static_cast<long>(g.cell_count());
  long iter = 0;
  while (std::sqrt(dot(r, r)) > tolerance * b_norm) {
    if (iter++ >= max_iter) {
      throw SolverError("signal solve did not reach relative residual " + format_double(tolerance) + " in " +
                        std::to_string(max_iter) + " iterations");
    }
    const Field ap = apply(p);
    const double pap = dot(p, ap);
    if (!(pap > 0.0) || !std::isfinite(pap)) throw SolverError("conjugate-gradient breakdown in the signal solve");
    const double alpha = rz / pap;
    x.for_each_cell([&](int i, int j) {
      x(i, j) += alpha * p(i, j);
      r(i, j) -= alpha * ap(i, j);
    });
    r.for_each_cell([&](int i, int j) { z(i, j) = inv_diag(i, j) * r(i, j); });
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    p.for_each_cell([&](int i, int j) { p(i, j) = z(i, j) + beta * p(i, j); });
  }
  apply_neumann_ghosts_in_place(x);
  return x;
}

namespace {

bool all_finite(const Field& f) {
  bool ok = true;
  f.for_each_cell([&](int i, int j) { ok = ok && std::isfinite(f(i, j)); });
  return ok;
}

}  // namespace

RunResult run(const Field& u0, const Field& v0, const ModelSpec& spec, const StepperConfig& cfg,
              const ProbeConfig& probes) {
  validate_stepper_config(cfg);
  if (!(u0.grid() == v0.grid())) throw std::invalid_argument("u0 and v0 live on different grids");
  if (probes.record_every < 1) throw std::invalid_argument("record_every must be at least 1");
  if (!(u0.min() >= 0.0) || !(v0.min() >= 0.0)) throw std::invalid_argument("initial data must be nonnegative");

  std::vector<double> snap_times = probes.snapshot_times;
  std::sort(snap_times.begin(), snap_times.end());
  snap_times.erase(std::remove_if(snap_times.begin(), snap_times.end(),
                                  [&](double t) { return t < 0.0 || t > cfg.t_end; }),
                   snap_times.end());
  snap_times.erase(std::unique(snap_times.begin(), snap_times.end()), snap_times.end());
  std::size_t next_snap = 0;

  RunResult result;
  SimState state{apply_neumann_ghosts(u0), apply_neumann_ghosts(v0), 0.0, 0};

  auto record = [&]() {
    if (!result.series.empty() && result.series.back().t >= state.t) return;
    result.series.append(measure(state.t, state.u, state.v, cfg.deadcore_epsilon));
    if (probes.keep_trajectory) result.trajectory.push_back({state.t, state.u});
  };
  auto snapshot_if_due = [&]() {
    while (next_snap < snap_times.size() && snap_times[next_snap] <= state.t) {
      if (snap_times[next_snap] == state.t) result.snapshots.push_back({state.t, state.u, state.v});
      ++next_snap;
    }
  };
  auto finish = [&](ExitReason reason, std::string message) {
    result.reason = reason;
    result.message = std::move(message);
    if (reason != ExitReason::Completed) result.fail_step = state.step;
    if (all_finite(state.u) && all_finite(state.v)) record();
    result.final_state = state;
    return result;
  };
  // Returns true when the state triggers a terminating exit.
  auto monitor = [&](ExitReason& reason, std::string& message) {
    if (!all_finite(state.u) || !all_finite(state.v)) {
      reason = ExitReason::NonFinite;
      message = "nonfinite values at step " + std::to_string(state.step);
      return true;
    }
    const double max_u = state.u.max();
    if (max_u > cfg.blowup_threshold) {
      reason = ExitReason::BlowUp;
      message = "max u = " + format_double(max_u) + " exceeded blow-up threshold at t = " + format_double(state.t);
      return true;
    }
    if (cfg.detect_deadcore) {
      const double min_u = state.u.min();
      if (min_u <= cfg.deadcore_epsilon) {
        reason = ExitReason::DeadCore;
        message = "min u = " + format_double(min_u) + " reached the dead-core threshold at t = " +
                  format_double(state.t);
        return true;
      }
    }
    return false;
  };

  ExitReason reason = ExitReason::Completed;
  std::string message;
  record();
  snapshot_if_due();
  if (monitor(reason, message)) return finish(reason, message);

  while (state.t < cfg.t_end) {
    double dt = 0.0;
    try {
      dt = compute_dt(state, spec, cfg);
    } catch (const NonFiniteError& e) {
      return finish(ExitReason::NonFinite, e.what());
    }
    bool lands_on_snapshot = false;
    if (next_snap < snap_times.size() && state.t + dt >= snap_times[next_snap]) {
      dt = snap_times[next_snap] - state.t;
      lands_on_snapshot = true;
    }
    const bool lands_on_end = state.t + dt >= cfg.t_end;

    Field u_next;
    Field v_next;
    try {
      u_next = step_u(state, spec, dt);
      v_next = step_v(state, spec, dt, cfg.solver_tolerance);
    } catch (const CflViolation& e) {
      return finish(ExitReason::CflViolation, e.what());
    } catch (const SolverError& e) {
      return finish(ExitReason::SolverFailure, e.what());
    }

    result.largest_dt = std::max(result.largest_dt, dt);
    state.u = std::move(u_next);
    state.v = std::move(v_next);
    if (lands_on_end) {
      state.t = cfg.t_end;
    } else if (lands_on_snapshot) {
      state.t = snap_times[next_snap];
    } else {
      state.t += dt;
    }
    ++state.step;

    if (monitor(reason, message)) return finish(reason, message);
    if (state.step % probes.record_every == 0) record();
    snapshot_if_due();
  }
  return finish(ExitReason::Completed, "reached t_end");
}

}  // namespace deadcore
