#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "deadcore/bounds.hpp"
#include "deadcore/config.hpp"
#include "deadcore/stepper.hpp"

namespace deadcore::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kCertificateViolation = 2,
  kBlowUp = 3,
  kDeadCore = 4,
  kNumericalFailure = 5,
};

/// A finished run together with its post-processed bounds.
struct Experiment {
  RunResult result;
  double delta0 = 0.0;
  double K_u0 = 0.0;  // ||u0||_inf + ||∇u0||_inf, echoed only
  double K_v0 = 0.0;  // ||v0||_inf + ||∇v0||_inf
  double tolerance = 0.0;
  std::optional<BoundCertificate> certificate;
  std::string certificate_error;
  std::optional<GradientBoundReport> gradient;
};

/// Realizes the initial data, runs the stepper and evaluates both bounds
/// with T = final time reached. Throws std::invalid_argument for configs
/// whose initial data are not strictly positive (Barenblatt oracle data).
Experiment run_experiment(const RunConfig& config);

ExitCode exit_code(const Experiment& experiment);

/// Deterministic JSON summary of the certificate and gradient check.
std::string certificate_json(const Experiment& experiment);

struct ConvergenceLevel {
  int cells = 0;
  double h = 0.0;
  double linf_error = 0.0;
  double l1_error = 0.0;
  std::optional<double> linf_order;
  std::optional<double> l1_order;
};

/// Runs `levels` dyadic refinements of a scenario with a closed-form
/// reference (linear heat with a cosine bump, or Barenblatt) and returns
/// errors at t_end with pairwise observed orders. Throws
/// std::invalid_argument when levels < 2 or no reference exists.
std::vector<ConvergenceLevel> convergence_study(const RunConfig& config, int levels);
std::string convergence_csv(const std::vector<ConvergenceLevel>& table);

/// Writes probes CSV, snapshot files and certificate JSON under the output
/// directory (SIM_OUTPUT_DIR overrides [output].directory).
int cmd_run(const std::string& config_path, std::ostream& out, std::ostream& err);
int cmd_certify(const std::string& config_path, std::ostream& out, std::ostream& err);
int cmd_convergence(const std::string& config_path, int levels, std::ostream& out, std::ostream& err);
int cmd_validate_model(const std::string& config_path, std::ostream& out, std::ostream& err);

/// Snapshot text: "# t=<t> nx=<nx> [ny=<ny>]" then one line per row.
std::string snapshot_text(double t, const Field& field);

}  // namespace deadcore::cli
