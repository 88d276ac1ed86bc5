#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "deadcore/grid.hpp"
#include "deadcore/model.hpp"
#include "deadcore/stepper.hpp"

namespace deadcore {

enum class ProfileKind { Constant, CosineBump, GaussianDip, Gaussian, Barenblatt };

/// Initial profile. Which parameters apply depends on `kind`:
///   constant      base
///   cosine_bump   base + amplitude * cos(pi x / Lx) [* cos(pi y / Ly)]
///   gaussian_dip  floor + (base - floor) (1 - exp(-|x - c|^2 / width^2))
///   gaussian      base + amplitude * exp(-|x - c|^2 / width^2)
///   barenblatt    porous-medium source solution with constant C at time t0,
///                 centred in the box (u0 only; compactly supported)
struct Profile {
  ProfileKind kind = ProfileKind::Constant;
  double base = 1.0;
  double amplitude = 0.0;
  double floor = 0.0;
  double width = 0.1;
  double center_x = 0.5;
  double center_y = 0.5;
  double C = 1.0 / 12.0;
  double t0 = 0.008;

  bool operator==(const Profile&) const = default;
};

struct InitialConfig {
  Profile u0;
  Profile v0;
  bool operator==(const InitialConfig&) const = default;
};

struct CertificateConfig {
  double c1 = 0.0;                          // 0 selects the calibrated default
  std::optional<double> tolerance;          // unset selects the h^2 + dt schedule
  bool operator==(const CertificateConfig&) const = default;
};

struct OutputConfig {
  std::string directory = "out";
  std::string prefix = "run";
  bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
  GridSpec grid;
  ModelSpec model;
  StepperConfig stepper;
  CertificateConfig certificate;
  InitialConfig initial;
  ProbeConfig probes;
  OutputConfig output;

  bool operator==(const RunConfig&) const = default;
};

struct ConfigDiagnostic {
  int line = 0;  // 0 when the problem is not tied to a line (e.g. a missing key)
  std::string message;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<ConfigDiagnostic> diagnostics);
  const std::vector<ConfigDiagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<ConfigDiagnostic> diagnostics_;
};

/// Parses the INI-style run configuration with sections [grid], [model],
/// [stepper], [initial], [probes], [output]. Every problem found is reported
/// in one ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Writes every key explicitly; parse_config(to_text(c)) == c.
std::string to_text(const RunConfig& config);

std::string to_string(ProfileKind kind);

/// Analytic infimum of a profile: δ0 for u0, nonnegativity check for v0.
double profile_floor(const Profile& profile);

Field realize(const Profile& profile, const GridSpec& grid, const ModelSpec& model);

/// Closed-form porous-medium source solution for D(s) = m s^{m-1} in `dim`
/// space dimensions, evaluated at radius r and time t > 0.
double barenblatt(double r, double t, double m, double C, int dim);

}  // namespace deadcore
