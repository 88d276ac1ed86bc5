#pragma once

#include <span>

#include "deadcore/grid.hpp"
#include "deadcore/model.hpp"
#include "deadcore/probes.hpp"

namespace deadcore {

/// Semigroup smoothing constant. For the slowest Neumann mode cos(pi x / L)
/// the ratio fitted by calibrate_C1 rises towards pi as t grows (about 1.58
/// on (0, 1], 1.85 on (0, 2]); this is pi rounded up. Calibrated, not proven.
inline constexpr double kCalibratedC1 = 3.2;

/// Lower bound u >= A e^{-Bt} on (T/2, T) and its check against a trajectory.
struct BoundCertificate {
  double A = 0.0;
  double B = 0.0;
  double delta_u = 0.0;  // A e^{-B T}
  double K2 = 0.0;
  double C_S = 0.0;
  double M_u = 0.0;
  double T = 0.0;
  double min_margin = 0.0;  // min over checked points of u - A e^{-B t}
  double tolerance = 0.0;
  long checked_points = 0;
  bool holds = false;
};

struct GradientBoundInputs {
  double K_v0 = 0.0;  // ||v0||_inf + ||∇v0||_inf
  double M_u = 0.0;
  double lambda1 = 0.0;
  double C1 = kCalibratedC1;
};

struct GradientBoundReport {
  double C1 = 0.0;
  double lambda1 = 0.0;
  double bound = 0.0;
  double measured_sup = 0.0;
  bool holds = false;
};

/// First nonzero Neumann eigenvalue of -Δ on the box: (π / longest side)^2.
double lambda1(const GridSpec& grid);

/// C1 K + C1 M K (1 + sqrt(λ1 π)) / λ1.
double semigroup_gradient_bound(double K_v0, double M_u, double lam1, double C1);

/// Builds A = min(δ0, m_u(T/2)), B = C_S(M_u) K2, δ_u = A e^{-BT} from the
/// probe series and checks u >= A e^{-Bt} - tolerance at every trajectory
/// point with T/2 < t <= T.
///
/// Throws CoverageError when the series or trajectory do not reach into
/// (T/2, T], and PreconditionError when min u <= 0 somewhere on [0, T/2].
BoundCertificate subsolution_certificate(const ProbeSeries& series, std::span<const TimedField> trajectory,
                                         const ModelSpec& spec, double T, double delta0, double tolerance);

GradientBoundReport check_gradient_bound(const ProbeSeries& series, const GradientBoundInputs& inputs);

/// max(1e-8, 10 (h^2 + dt) ||u0||_inf).
double default_certificate_tolerance(double h, double dt, double u0_sup);

/// Smallest C1 with ||∇ e^{tΔ} v0|| <= C1 (1 + t^{-1/2}) e^{-λ1 t} ||v0|| on
/// the sampled times, for v0 = cos(π x / L) evolved by the backward-Euler
/// heat step on `grid` (1-D).
double calibrate_C1(const GridSpec& grid, double t_max, double dt);

}  // namespace deadcore
