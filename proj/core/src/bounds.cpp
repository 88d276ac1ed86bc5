#include "deadcore/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "deadcore/errors.hpp"
#include "deadcore/stepper.hpp"

namespace deadcore {

double lambda1(const GridSpec& grid) {
  const double longest = grid.dim == 2 ? std::max(grid.lengths[0], grid.lengths[1]) : grid.lengths[0];
  const double k = std::numbers::pi / longest;
  return k * k;
}

double semigroup_gradient_bound(double K_v0, double M_u, double lam1, double C1) {
  return C1 * K_v0 + C1 * M_u * K_v0 * (1.0 + std::sqrt(lam1 * std::numbers::pi)) / lam1;
}

double default_certificate_tolerance(double h, double dt, double u0_sup) {
  return std::max(1e-8, 10.0 * (h * h + dt) * u0_sup);
}

BoundCertificate subsolution_certificate(const ProbeSeries& series, std::span<const TimedField> trajectory,
                                         const ModelSpec& spec, double T, double delta0, double tolerance) {
  if (!(T > 0.0)) throw std::invalid_argument("certificate horizon T must be positive");
  if (!(delta0 > 0.0)) throw std::invalid_argument("initial floor delta0 must be positive");

  BoundCertificate cert;
  cert.T = T;
  cert.tolerance = tolerance;

  double m_half = std::numeric_limits<double>::infinity();
  std::size_t first_half = 0;
  cert.M_u = 0.0;
  for (const auto& r : series.records()) {
    if (r.t > T) continue;
    cert.M_u = std::max(cert.M_u, r.max_u);
    if (r.t <= 0.5 * T) {
      m_half = std::min(m_half, r.min_u);
      ++first_half;
    }
  }
  if (first_half == 0) throw CoverageError("no probe records in [0, T/2]");
  if (!(m_half > 0.0)) throw PreconditionError("min u is not positive on [0, T/2]; certificate inapplicable");

  cert.A = std::min(delta0, m_half);
  cert.C_S = compute_CS(spec, cert.M_u);
  cert.K2 = measure_K2(series, T);
  cert.B = cert.C_S * cert.K2;
  cert.delta_u = cert.A * std::exp(-cert.B * T);

  cert.min_margin = std::numeric_limits<double>::infinity();
  for (const auto& snap : trajectory) {
    if (!(snap.t > 0.5 * T && snap.t <= T)) continue;
    const double floor = cert.A * std::exp(-cert.B * snap.t);
    snap.u.for_each_cell([&](int i, int j) {
      cert.min_margin = std::min(cert.min_margin, snap.u(i, j) - floor);
      ++cert.checked_points;
    });
  }
  if (cert.checked_points == 0) throw CoverageError("no trajectory snapshots in (T/2, T]");
  cert.holds = cert.min_margin >= -tolerance;
  return cert;
}

GradientBoundReport check_gradient_bound(const ProbeSeries& series, const GradientBoundInputs& inputs) {
  if (series.empty()) throw CoverageError("gradient check needs a nonempty probe series");
  GradientBoundReport report;
  report.C1 = inputs.C1;
  report.lambda1 = inputs.lambda1;
  report.bound = semigroup_gradient_bound(inputs.K_v0, inputs.M_u, inputs.lambda1, inputs.C1);
  for (const auto& r : series.records()) report.measured_sup = std::max(report.measured_sup, r.sup_grad_v);
  report.holds = report.measured_sup <= report.bound;
  return report;
}

double calibrate_C1(const GridSpec& grid, double t_max, double dt) {
  if (grid.dim != 1) throw std::invalid_argument("C1 calibration runs on a 1-D grid");
  const double L = grid.lengths[0];
  const double lam = lambda1(grid);
  SimState state{Field(grid, 0.0), sample(grid, [L](double x, double) { return std::cos(std::numbers::pi * x / L); }),
                 0.0, 0};
  double v0_sup = 0.0;
  state.v.for_each_cell([&](int i, int) { v0_sup = std::max(v0_sup, std::abs(state.v(i))); });

  ModelSpec heat;  // consumption mode with u = 0 is the pure heat flow
  double c1 = 0.0;
  const long steps = static_cast<long>(std::ceil(t_max / dt));
  for (long n = 1; n <= steps; ++n) {
    state.v = step_v(state, heat, dt);
    state.t = n * dt;
    const double envelope = (1.0 + 1.0 / std::sqrt(state.t)) * std::exp(-lam * state.t) * v0_sup;
    c1 = std::max(c1, sup_grad(state.v) / envelope);
  }
  return c1;
}

}  // namespace deadcore
