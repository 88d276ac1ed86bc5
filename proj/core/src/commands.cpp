#include "deadcore/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "deadcore/errors.hpp"
#include "deadcore/probes.hpp"

namespace deadcore::cli {

namespace {

double w1inf_norm(const Field& f) {
  double sup = 0.0;
  f.for_each_cell([&](int i, int j) { sup = std::max(sup, std::abs(f(i, j))); });
  return sup + sup_grad(f);
}

std::string output_directory(const RunConfig& cfg) {
  if (const char* env = std::getenv("SIM_OUTPUT_DIR"); env != nullptr && *env != '\0') return env;
  return cfg.output.directory;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << contents;
}

bool has_heat_reference(const RunConfig& cfg) {
  return std::holds_alternative<LinearDiffusion>(cfg.model.diffusion) && taxis_free(cfg.model) &&
         source_free(cfg.model) && cfg.initial.u0.kind == ProfileKind::CosineBump;
}

bool has_barenblatt_reference(const RunConfig& cfg) {
  return std::holds_alternative<PorousMedium>(cfg.model.diffusion) && taxis_free(cfg.model) &&
         source_free(cfg.model) && cfg.initial.u0.kind == ProfileKind::Barenblatt;
}

}  // namespace

Experiment run_experiment(const RunConfig& cfg) {
  if (cfg.initial.u0.kind == ProfileKind::Barenblatt) {
    throw std::invalid_argument(
        "barenblatt initial data is compactly supported; it only serves the convergence command");
  }
  Experiment ex;
  const Field u0 = realize(cfg.initial.u0, cfg.grid, cfg.model);
  const Field v0 = realize(cfg.initial.v0, cfg.grid, cfg.model);
  ex.delta0 = profile_floor(cfg.initial.u0);
  ex.K_u0 = w1inf_norm(u0);
  ex.K_v0 = w1inf_norm(v0);

  ex.result = run(u0, v0, cfg.model, cfg.stepper, cfg.probes);
  const RunResult& res = ex.result;
  ex.tolerance = cfg.certificate.tolerance.value_or(
      default_certificate_tolerance(cfg.grid.min_spacing(), res.largest_dt, u0.max()));

  const bool numerical_failure = res.reason == ExitReason::CflViolation ||
                                 res.reason == ExitReason::SolverFailure || res.reason == ExitReason::NonFinite;
  if (numerical_failure) {
    ex.certificate_error = "run ended by " + to_string(res.reason);
    return ex;
  }

  // Early termination evaluates the bounds at the time reached.
  const double T = res.final_state.t;
  if (T > 0.0) {
    try {
      ex.certificate = subsolution_certificate(res.series, res.trajectory, cfg.model, T, ex.delta0, ex.tolerance);
    } catch (const std::exception& e) {
      ex.certificate_error = e.what();
    }
  } else {
    ex.certificate_error = "run ended at t = 0";
  }

  double M_u = 0.0;
  for (const auto& r : res.series.records()) M_u = std::max(M_u, r.max_u);
  GradientBoundInputs inputs;
  inputs.K_v0 = ex.K_v0;
  inputs.M_u = M_u;
  inputs.lambda1 = lambda1(cfg.grid);
  inputs.C1 = cfg.certificate.c1 > 0.0 ? cfg.certificate.c1 : kCalibratedC1;
  ex.gradient = check_gradient_bound(res.series, inputs);
  return ex;
}

ExitCode exit_code(const Experiment& ex) {
  switch (ex.result.reason) {
    case ExitReason::Completed: return ex.certificate && ex.certificate->holds ? kOk : kCertificateViolation;
    case ExitReason::BlowUp: return kBlowUp;
    case ExitReason::DeadCore: return kDeadCore;
    case ExitReason::CflViolation:
    case ExitReason::SolverFailure:
    case ExitReason::NonFinite: return kNumericalFailure;
  }
  return kNumericalFailure;
}

std::string certificate_json(const Experiment& ex) {
  nlohmann::ordered_json j;
  if (ex.certificate) {
    const auto& c = *ex.certificate;
    j["A"] = c.A;
    j["B"] = c.B;
    j["delta_u"] = c.delta_u;
    j["K2"] = c.K2;
    j["C_S"] = c.C_S;
    j["M_u"] = c.M_u;
    j["T"] = c.T;
    j["min_margin"] = c.min_margin;
    j["holds"] = c.holds;
  } else {
    for (const char* key : {"A", "B", "delta_u", "K2", "C_S", "M_u", "T", "min_margin"}) j[key] = nullptr;
    j["holds"] = false;
    j["certificate_error"] = ex.certificate_error;
  }
  j["tolerance"] = ex.tolerance;
  if (ex.gradient) {
    j["C1"] = ex.gradient->C1;
    j["lambda1"] = ex.gradient->lambda1;
    j["gradient_bound_holds"] = ex.gradient->holds;
    j["gradient_bound"] = ex.gradient->bound;
    j["gradient_measured_sup"] = ex.gradient->measured_sup;
  } else {
    j["C1"] = nullptr;
    j["lambda1"] = nullptr;
    j["gradient_bound_holds"] = false;
  }
  j["gradient_check"] = "calibrated";
  j["tolerance_schedule"] = "max(1e-8, 10*(h^2+dt)*sup(u0)) unless overridden";
  j["delta0"] = ex.delta0;
  j["K_u0"] = ex.K_u0;
  j["K_v0"] = ex.K_v0;
  j["exit_reason"] = to_string(ex.result.reason);
  j["steps"] = ex.result.final_state.step;
  return j.dump(2) + "\n";
}

std::string snapshot_text(double t, const Field& field) {
  const GridSpec& g = field.grid();
  std::string out = "# t=" + format_double(t) + " nx=" + std::to_string(g.nx());
  if (g.dim == 2) out += " ny=" + std::to_string(g.ny());
  out += '\n';
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (i > 0) out += ' ';
      out += format_double(field(i, j));
    }
    out += '\n';
  }
  return out;
}

std::vector<ConvergenceLevel> convergence_study(const RunConfig& base, int levels) {
  if (levels < 2) throw std::invalid_argument("a convergence study needs at least 2 levels");
  const bool heat = has_heat_reference(base);
  const bool bb = has_barenblatt_reference(base);
  if (!heat && !bb) {
    throw std::invalid_argument(
        "scenario has no closed-form reference (need linear heat with cosine_bump u0, or porous_medium with "
        "barenblatt u0; both taxis- and source-free)");
  }

  const GridSpec& g0 = base.grid;
  const double T = base.stepper.t_end;
  std::function<double(double, double)> exact;
  if (heat) {
    const double d = std::get<LinearDiffusion>(base.model.diffusion).d;
    const auto& p = base.initial.u0;
    const double Lx = g0.lengths[0];
    const double Ly = g0.lengths[1];
    const bool two_d = g0.dim == 2;
    double rate = std::numbers::pi * std::numbers::pi / (Lx * Lx);
    if (two_d) rate += std::numbers::pi * std::numbers::pi / (Ly * Ly);
    const double decay = std::exp(-d * rate * T);
    exact = [=](double x, double y) {
      double shape = std::cos(std::numbers::pi * x / Lx);
      if (two_d) shape *= std::cos(std::numbers::pi * y / Ly);
      return p.base + p.amplitude * decay * shape;
    };
  } else {
    const double m = std::get<PorousMedium>(base.model.diffusion).m;
    const auto& p = base.initial.u0;
    const int dim = g0.dim;
    const double n = dim;
    const double alpha = n / (n * (m - 1.0) + 2.0);
    const double k = alpha * (m - 1.0) / (2.0 * m * n);
    const double radius = std::sqrt(p.C / k) * std::pow(p.t0 + T, alpha / n);
    double half_width = 0.5 * g0.lengths[0];
    if (dim == 2) half_width = std::min(half_width, 0.5 * g0.lengths[1]);
    if (radius >= half_width) {
      throw std::invalid_argument("barenblatt support reaches the boundary before t_end; shorten t_end");
    }
    const double Lx = g0.lengths[0];
    const double Ly = g0.lengths[1];
    exact = [=](double x, double y) {
      const double dx = x - 0.5 * Lx;
      const double dy = dim == 2 ? y - 0.5 * Ly : 0.0;
      return barenblatt(std::sqrt(dx * dx + dy * dy), p.t0 + T, m, p.C, dim);
    };
  }

  std::vector<ConvergenceLevel> table;
  for (int level = 0; level < levels; ++level) {
    RunConfig cfg = base;
    cfg.grid.cells[0] = g0.cells[0] << level;
    if (g0.dim == 2) cfg.grid.cells[1] = g0.cells[1] << level;
    cfg.stepper.detect_deadcore = !bb;
    cfg.probes.keep_trajectory = false;
    cfg.probes.snapshot_times.clear();
    cfg.probes.record_every = 1000000;

    const Field u0 = realize(cfg.initial.u0, cfg.grid, cfg.model);
    const Field v0 = realize(cfg.initial.v0, cfg.grid, cfg.model);
    const RunResult res = run(u0, v0, cfg.model, cfg.stepper, cfg.probes);
    if (res.reason != ExitReason::Completed) {
      throw std::runtime_error("refinement level " + std::to_string(level) + " ended with " +
                               to_string(res.reason) + ": " + res.message);
    }
    const Field reference = sample(cfg.grid, exact);
    ConvergenceLevel row;
    row.cells = cfg.grid.cells[0];
    row.h = cfg.grid.spacing(0);
    const Field& u = res.final_state.u;
    double l1 = 0.0;
    u.for_each_cell([&](int i, int j) {
      const double e = std::abs(u(i, j) - reference(i, j));
      row.linf_error = std::max(row.linf_error, e);
      l1 += e;
    });
    row.l1_error = l1 * cfg.grid.cell_volume();
    if (!table.empty()) {
      const auto& prev = table.back();
      const double ratio = prev.h / row.h;
      row.linf_order = std::log(prev.linf_error / row.linf_error) / std::log(ratio);
      row.l1_order = std::log(prev.l1_error / row.l1_error) / std::log(ratio);
    }
    table.push_back(row);
  }
  return table;
}

std::string convergence_csv(const std::vector<ConvergenceLevel>& table) {
  std::string out = "level,cells_x,h,linf_error,l1_error,linf_order,l1_order\n";
  for (std::size_t k = 0; k < table.size(); ++k) {
    const auto& r = table[k];
    out += std::to_string(k) + ',' + std::to_string(r.cells) + ',' + format_double(r.h) + ',' +
           format_double(r.linf_error) + ',' + format_double(r.l1_error) + ',' +
           (r.linf_order ? format_double(*r.linf_order) : "") + ',' + (r.l1_order ? format_double(*r.l1_order) : "") +
           '\n';
  }
  return out;
}

namespace {

std::optional<RunConfig> load_or_report(const std::string& path, std::ostream& err) {
  try {
    return load_config(path);
  } catch (const ConfigError& e) {
    err << "config error in " << path << ":\n" << e.what() << "\n";
  }
  return std::nullopt;
}

std::optional<Experiment> experiment_or_report(const RunConfig& cfg, std::ostream& err) {
  try {
    return run_experiment(cfg);
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
  }
  return std::nullopt;
}

void report_run(const Experiment& ex, std::ostream& err) {
  err << "exit: " << to_string(ex.result.reason) << " at t = " << format_double(ex.result.final_state.t)
      << " after " << ex.result.final_state.step << " steps";
  if (!ex.result.message.empty()) err << " (" << ex.result.message << ")";
  err << "\n";
  if (!ex.certificate) err << "certificate unavailable: " << ex.certificate_error << "\n";
}

}  // namespace

int cmd_run(const std::string& path, std::ostream& out, std::ostream& err) {
  const auto cfg = load_or_report(path, err);
  if (!cfg) return kUsage;
  const auto ex = experiment_or_report(*cfg, err);
  if (!ex) return kUsage;

  const std::filesystem::path dir = output_directory(*cfg);
  const std::string& prefix = cfg->output.prefix;
  try {
    std::filesystem::create_directories(dir);
    write_file(dir / (prefix + "_probes.csv"), ex->result.series.to_csv());
    for (std::size_t k = 0; k < ex->result.snapshots.size(); ++k) {
      const auto& s = ex->result.snapshots[k];
      std::ostringstream index;
      index << std::setw(4) << std::setfill('0') << k;
      write_file(dir / (prefix + "_snapshot_" + index.str() + "_u.txt"), snapshot_text(s.t, s.u));
      write_file(dir / (prefix + "_snapshot_" + index.str() + "_v.txt"), snapshot_text(s.t, s.v));
    }
    write_file(dir / (prefix + "_certificate.json"), certificate_json(*ex));
  } catch (const std::exception& e) {
    err << "output error: " << e.what() << "\n";
    return kUsage;
  }
  report_run(*ex, err);
  out << "wrote " << (dir / prefix).string() << "_{probes.csv,certificate.json} and " << ex->result.snapshots.size()
      << " snapshot pair(s)\n";
  return exit_code(*ex);
}

int cmd_certify(const std::string& path, std::ostream& out, std::ostream& err) {
  const auto cfg = load_or_report(path, err);
  if (!cfg) return kUsage;
  const auto ex = experiment_or_report(*cfg, err);
  if (!ex) return kUsage;
  report_run(*ex, err);
  out << certificate_json(*ex);
  return exit_code(*ex);
}

int cmd_convergence(const std::string& path, int levels, std::ostream& out, std::ostream& err) {
  if (levels < 2) {
    err << "usage error: --levels must be at least 2\n";
    return kUsage;
  }
  const auto cfg = load_or_report(path, err);
  if (!cfg) return kUsage;
  try {
    out << convergence_csv(convergence_study(*cfg, levels));
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::runtime_error& e) {
    err << "convergence run failed: " << e.what() << "\n";
    return kNumericalFailure;
  }
  return kOk;
}

int cmd_validate_model(const std::string& path, std::ostream& out, std::ostream& err) {
  const auto cfg = load_or_report(path, err);
  if (!cfg) return kUsage;
  const HypothesisReport report = validate_hypotheses(cfg->model);
  out << "admissible: " << (report.admissible ? "true" : "false") << "\n";
  out << "cd_min: " << format_double(report.cd_min) << "\n";
  out << "cd_max: " << format_double(report.cd_max) << "\n";
  out << "smallest_sample: " << format_double(report.smallest_sample) << "\n";
  out << "violations: " << report.violations.size() << "\n";
  for (const auto& v : report.violations) out << "  s = " << format_double(v.s) << "  " << v.condition << "\n";
  return report.admissible ? kOk : kCertificateViolation;
}

}  // namespace deadcore::cli
