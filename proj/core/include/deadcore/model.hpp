#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace deadcore {

// ---------------------------------------------------------------------------
// Diffusion families D(s)
// ---------------------------------------------------------------------------

/// D(s) = m s^{m-1}, degenerate at zero for m > 1.
struct PorousMedium {
  double m = 2.0;
  bool operator==(const PorousMedium&) const = default;
};

/// D(s) = d. Non-degenerate reference case.
struct LinearDiffusion {
  double d = 1.0;
  bool operator==(const LinearDiffusion&) const = default;
};

class PchipTable;

/// Tabulated D with monotone piecewise-cubic interpolation. Beyond the last
/// knot D is held at its final value.
struct CustomDiffusion {
  std::vector<std::pair<double, double>> table;  // (s, D(s)), s strictly increasing

  explicit CustomDiffusion(std::vector<std::pair<double, double>> pairs);
  CustomDiffusion(const CustomDiffusion&) = default;
  CustomDiffusion& operator=(const CustomDiffusion&) = default;

  bool operator==(const CustomDiffusion& o) const { return table == o.table; }

  double value(double s) const;
  double integral(double s) const;

 private:
  std::shared_ptr<const PchipTable> interp_;
};

using Diffusion = std::variant<PorousMedium, LinearDiffusion, CustomDiffusion>;

// ---------------------------------------------------------------------------
// Sensitivity S(s) and source f(u, v)
// ---------------------------------------------------------------------------

struct ConstantSensitivity {
  double chi = 1.0;
  bool operator==(const ConstantSensitivity&) const = default;
};

/// S(s) = chi / (1 + kappa s); decreasing in s.
struct SaturatingSensitivity {
  double chi = 1.0;
  double kappa = 0.0;
  bool operator==(const SaturatingSensitivity&) const = default;
};

using Sensitivity = std::variant<ConstantSensitivity, SaturatingSensitivity>;

struct ZeroSource {
  bool operator==(const ZeroSource&) const = default;
};

/// f(u, v) = max(0, r u (1 - u/K)).
struct LogisticSource {
  double r = 1.0;
  double K = 1.0;
  bool operator==(const LogisticSource&) const = default;
};

using Source = std::variant<ZeroSource, LogisticSource>;

enum class SignalMode {
  Consumption,  // v_t = Δv - u v
  KellerSegel,  // v_t = Δv - v + u
};

struct ModelSpec {
  Diffusion diffusion = PorousMedium{};
  Sensitivity sensitivity = ConstantSensitivity{};
  Source source = ZeroSource{};
  SignalMode signal_mode = SignalMode::Consumption;
  double s0 = 1.0;  // right end of the range where the degeneracy bounds are checked
  double p = 2.0;   // degeneracy exponent, > 1

  bool operator==(const ModelSpec&) const = default;
};

/// Throws std::invalid_argument on parameter values outside their families'
/// ranges (m <= 1, d <= 0, negative chi/kappa/r/K, s0 <= 0, p <= 1, bad table).
void validate_parameters(const ModelSpec& spec);

double eval_D(const ModelSpec& spec, double s);
/// Kirchhoff transform Φ(s) = ∫_0^s D.
double eval_Phi(const ModelSpec& spec, double s);
double eval_S(const ModelSpec& spec, double s);
double eval_f(const ModelSpec& spec, double u, double v);

/// sup of S over [0, M].
double compute_CS(const ModelSpec& spec, double M);

/// True when S vanishes identically (no taxis term).
bool taxis_free(const ModelSpec& spec);
bool source_free(const ModelSpec& spec);

// ---------------------------------------------------------------------------
// Structural hypotheses on D
// ---------------------------------------------------------------------------

struct HypothesisViolation {
  double s;
  std::string condition;  // "D>0", "D'>=0", "C_D-range-empty"
};

struct HypothesisReport {
  double cd_min = 0.0;  // sup s D'(s) / D(s)
  double cd_max = 0.0;  // inf D(s) / s^{p-1}
  double smallest_sample = 0.0;
  bool admissible = false;
  std::vector<HypothesisViolation> violations;
};

/// Samples (0, s0] geometrically (down to 1e-12 s0) plus s0 itself and
/// checks s D' <= C_D D and C_D s^{p-1} <= D for some common C_D > 0.
/// Requires samples >= 100.
HypothesisReport validate_hypotheses(const ModelSpec& spec, int samples = 400);

std::string to_string(SignalMode mode);

}  // namespace deadcore
