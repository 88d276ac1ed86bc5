#include "deadcore/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

// Boost 1.74's pchip calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include "deadcore/errors.hpp"

namespace deadcore {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_nonnegative(double x, const char* what) {
  if (!(x >= 0.0)) {
    std::ostringstream os;
    os << what << " must be nonnegative, got " << x;
    throw DomainError(os.str());
  }
}

// Composite Simpson on [a, b], doubling panels until two successive
// estimates agree to 1e-12 relative.
template <class F>
double refined_simpson(const F& f, double a, double b) {
  if (b <= a) return 0.0;
  auto simpson = [&](int panels) {
    const double h = (b - a) / panels;
    double sum = f(a) + f(b);
    for (int i = 1; i < panels; ++i) sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
  };
  int panels = 2;
  double previous = simpson(panels);
  while (panels < (1 << 20)) {
    panels *= 2;
    const double current = simpson(panels);
    if (std::abs(current - previous) <= 1e-12 * std::abs(current)) return current;
    previous = current;
  }
  return previous;
}

}  // namespace

class PchipTable {
 public:
  explicit PchipTable(const std::vector<std::pair<double, double>>& table) {
    std::vector<double> xs, ys;
    for (const auto& [s, d] : table) {
      xs.push_back(s);
      ys.push_back(d);
    }
    knots_ = xs;
    last_value_ = ys.back();
    interp_ = std::make_unique<boost::math::interpolators::pchip<std::vector<double>>>(std::move(xs),
                                                                                      std::move(ys));
    cumulative_.assign(knots_.size(), 0.0);
    for (std::size_t k = 1; k < knots_.size(); ++k) {
      cumulative_[k] = cumulative_[k - 1] + refined_simpson([this](double s) { return value(s); },
                                                            knots_[k - 1], knots_[k]);
    }
  }

  double value(double s) const {
    if (s >= knots_.back()) return last_value_;
    if (s <= knots_.front()) return (*interp_)(knots_.front());
    return (*interp_)(s);
  }

  double integral(double s) const {
    if (s <= knots_.front()) return value(knots_.front()) * s;
    if (s >= knots_.back()) return cumulative_.back() + last_value_ * (s - knots_.back());
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), s);
    const auto k = static_cast<std::size_t>(std::distance(knots_.begin(), it)) - 1;
    return cumulative_[k] + refined_simpson([this](double x) { return value(x); }, knots_[k], s);
  }

 private:
  std::vector<double> knots_;
  std::vector<double> cumulative_;
  double last_value_ = 0.0;
  std::unique_ptr<boost::math::interpolators::pchip<std::vector<double>>> interp_;
};

CustomDiffusion::CustomDiffusion(std::vector<std::pair<double, double>> pairs)
    : table(std::move(pairs)) {
  if (table.size() < 4) throw std::invalid_argument("custom diffusion table needs at least 4 pairs");
  if (table.front().first != 0.0) throw std::invalid_argument("custom diffusion table must start at s = 0");
  for (std::size_t k = 1; k < table.size(); ++k) {
    if (!(table[k].first > table[k - 1].first)) {
      throw std::invalid_argument("custom diffusion table abscissae must be strictly increasing");
    }
  }
  for (const auto& [s, d] : table) {
    if (!std::isfinite(s) || !std::isfinite(d) || d < 0.0) {
      throw std::invalid_argument("custom diffusion table values must be finite and nonnegative");
    }
  }
  interp_ = std::make_shared<const PchipTable>(table);
}

double CustomDiffusion::value(double s) const { return interp_->value(s); }
double CustomDiffusion::integral(double s) const { return interp_->integral(s); }

void validate_parameters(const ModelSpec& spec) {
  std::visit(overloaded{
                 [](const PorousMedium& d) {
                   if (!(d.m > 1.0)) throw std::invalid_argument("porous-medium exponent m must exceed 1");
                 },
                 [](const LinearDiffusion& d) {
                   if (!(d.d > 0.0)) throw std::invalid_argument("linear diffusivity d must be positive");
                 },
                 [](const CustomDiffusion&) {},
             },
             spec.diffusion);
  std::visit(overloaded{
                 [](const ConstantSensitivity& s) {
                   if (!(s.chi >= 0.0)) throw std::invalid_argument("chi must be nonnegative");
                 },
                 [](const SaturatingSensitivity& s) {
                   if (!(s.chi >= 0.0) || !(s.kappa >= 0.0)) {
                     throw std::invalid_argument("chi and kappa must be nonnegative");
                   }
                 },
             },
             spec.sensitivity);
  std::visit(overloaded{
                 [](const ZeroSource&) {},
                 [](const LogisticSource& f) {
                   if (!(f.r >= 0.0)) throw std::invalid_argument("logistic rate r must be nonnegative");
                   if (!(f.K > 0.0)) throw std::invalid_argument("logistic capacity K must be positive");
                 },
             },
             spec.source);
  if (!(spec.s0 > 0.0)) throw std::invalid_argument("s0 must be positive");
  if (!(spec.p > 1.0)) throw std::invalid_argument("p must exceed 1");
}

double eval_D(const ModelSpec& spec, double s) {
  require_nonnegative(s, "D argument");
  return std::visit(overloaded{
                        [s](const PorousMedium& d) { return s == 0.0 ? 0.0 : d.m * std::pow(s, d.m - 1.0); },
                        [](const LinearDiffusion& d) { return d.d; },
                        [s](const CustomDiffusion& d) { return d.value(s); },
                    },
                    spec.diffusion);
}

double eval_Phi(const ModelSpec& spec, double s) {
  require_nonnegative(s, "Phi argument");
  if (s == 0.0) return 0.0;
  return std::visit(overloaded{
                        [s](const PorousMedium& d) { return std::pow(s, d.m); },
                        [s](const LinearDiffusion& d) { return d.d * s; },
                        [s](const CustomDiffusion& d) { return d.integral(s); },
                    },
                    spec.diffusion);
}

double eval_S(const ModelSpec& spec, double s) {
  require_nonnegative(s, "S argument");
  return std::visit(overloaded{
                        [](const ConstantSensitivity& c) { return c.chi; },
                        [s](const SaturatingSensitivity& c) { return c.chi / (1.0 + c.kappa * s); },
                    },
                    spec.sensitivity);
}

double eval_f(const ModelSpec& spec, double u, double v) {
  require_nonnegative(u, "f argument u");
  require_nonnegative(v, "f argument v");
  return std::visit(overloaded{
                        [](const ZeroSource&) { return 0.0; },
                        [u](const LogisticSource& f) { return std::max(0.0, f.r * u * (1.0 - u / f.K)); },
                    },
                    spec.source);
}

double compute_CS(const ModelSpec& spec, double M) {
  if (!(M > 0.0)) throw DomainError("compute_CS needs M > 0");
  // Both families attain their supremum at s = 0 (constant, or decreasing).
  return std::visit(overloaded{
                        [](const ConstantSensitivity& c) { return c.chi; },
                        [](const SaturatingSensitivity& c) { return c.chi; },
                    },
                    spec.sensitivity);
}

bool taxis_free(const ModelSpec& spec) { return compute_CS(spec, 1.0) == 0.0; }

bool source_free(const ModelSpec& spec) {
  return std::visit(overloaded{
                        [](const ZeroSource&) { return true; },
                        [](const LogisticSource& f) { return f.r == 0.0; },
                    },
                    spec.source);
}

namespace {

double derivative_D(const ModelSpec& spec, double s) {
  return std::visit(overloaded{
                        [s](const PorousMedium& d) { return d.m * (d.m - 1.0) * std::pow(s, d.m - 2.0); },
                        [](const LinearDiffusion&) { return 0.0; },
                        [s](const CustomDiffusion& d) {
                          const double h = s * 1e-6;
                          return (d.value(s + h) - d.value(s - h)) / (2.0 * h);
                        },
                    },
                    spec.diffusion);
}

}  // namespace

HypothesisReport validate_hypotheses(const ModelSpec& spec, int samples) {
  if (samples < 100) throw std::invalid_argument("validate_hypotheses needs at least 100 samples");
  validate_parameters(spec);

  HypothesisReport report;
  report.cd_min = 0.0;
  report.cd_max = std::numeric_limits<double>::infinity();
  double argmin_cd_max = spec.s0;

  if (const auto* custom = std::get_if<CustomDiffusion>(&spec.diffusion)) {
    const auto& table = custom->table;
    for (std::size_t k = 1; k < table.size(); ++k) {
      if (table[k].second < table[k - 1].second) report.violations.push_back({table[k].first, "D'>=0"});
      if (table[k].second <= 0.0) report.violations.push_back({table[k].first, "D>0"});
    }
  }

  const double decades = 12.0;
  report.smallest_sample = spec.s0 * std::pow(10.0, -decades);
  for (int k = 0; k < samples; ++k) {
    const double s = k == samples - 1
                         ? spec.s0
                         : spec.s0 * std::pow(10.0, -decades * (1.0 - static_cast<double>(k) / (samples - 1)));
    const double d = eval_D(spec, s);
    if (!(d > 0.0)) {
      report.violations.push_back({s, "D>0"});
      continue;
    }
    const double dprime = derivative_D(spec, s);
    if (dprime < -1e-8 * (1.0 + d / s)) report.violations.push_back({s, "D'>=0"});
    report.cd_min = std::max(report.cd_min, s * dprime / d);
    const double lower = d / std::pow(s, spec.p - 1.0);
    if (lower < report.cd_max) {
      report.cd_max = lower;
      argmin_cd_max = s;
    }
  }

  if (report.violations.empty() && !(report.cd_min <= report.cd_max && report.cd_max > 0.0)) {
    report.violations.push_back({argmin_cd_max, "C_D-range-empty"});
  }
  report.admissible = report.violations.empty();
  return report;
}

std::string to_string(SignalMode mode) {
  return mode == SignalMode::Consumption ? "consumption" : "keller_segel";
}

}  // namespace deadcore
