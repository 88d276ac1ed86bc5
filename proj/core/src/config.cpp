#include "deadcore/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "deadcore/probes.hpp"

namespace deadcore {

namespace {

std::string join_diagnostics(const std::vector<ConfigDiagnostic>& diags) {
  std::string out;
  for (const auto& d : diags) {
    if (!out.empty()) out += '\n';
    out += d.line > 0 ? "line " + std::to_string(d.line) + ": " + d.message : d.message;
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

using SectionMap = std::map<std::string, std::map<std::string, Entry>>;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"grid", {"dim", "length_x", "length_y", "cells_x", "cells_y"}},
      {"model",
       {"diffusion", "m", "d", "table", "sensitivity", "chi", "kappa", "source", "r", "K", "signal_mode", "s0", "p"}},
      {"stepper",
       {"cfl_safety", "dt_max", "blowup_threshold", "deadcore_epsilon", "t_end", "solver_tolerance", "c1",
        "certificate_tolerance"}},
      {"initial",
       {"u0", "u0_base", "u0_amplitude", "u0_floor", "u0_width", "u0_center_x", "u0_center_y", "u0_C", "u0_t0", "v0",
        "v0_base", "v0_amplitude", "v0_floor", "v0_width", "v0_center_x", "v0_center_y", "v0_C", "v0_t0"}},
      {"probes", {"record_every", "snapshot_times"}},
      {"output", {"directory", "prefix"}},
  };
  return keys;
}

// Typed access to the tokenized file, accumulating diagnostics.
class Reader {
 public:
  Reader(SectionMap& sections, std::vector<ConfigDiagnostic>& diags) : sections_(sections), diags_(diags) {}

  Entry* find(const std::string& section, const std::string& key) {
    auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    auto k = s->second.find(key);
    if (k == s->second.end()) return nullptr;
    k->second.used = true;
    return &k->second;
  }

  bool has(const std::string& section, const std::string& key) {
    auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
  }

  int line_of(const std::string& section, const std::string& key) {
    auto s = sections_.find(section);
    if (s == sections_.end()) return 0;
    auto k = s->second.find(key);
    return k == s->second.end() ? 0 : k->second.line;
  }

  void number(const std::string& section, const std::string& key, double& target, bool required = false) {
    Entry* e = find(section, key);
    if (e == nullptr) {
      if (required) missing(section, key);
      return;
    }
    const std::string v = unquote(e->value);
    double parsed = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), parsed);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
      error(e->line, "[" + section + "] " + key + ": expected a number, got '" + e->value + "'");
      return;
    }
    target = parsed;
  }

  void integer(const std::string& section, const std::string& key, int& target, bool required = false) {
    Entry* e = find(section, key);
    if (e == nullptr) {
      if (required) missing(section, key);
      return;
    }
    const std::string v = unquote(e->value);
    int parsed = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), parsed);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
      error(e->line, "[" + section + "] " + key + ": expected an integer, got '" + e->value + "'");
      return;
    }
    target = parsed;
  }

  std::optional<std::string> text(const std::string& section, const std::string& key, bool required = false) {
    Entry* e = find(section, key);
    if (e == nullptr) {
      if (required) missing(section, key);
      return std::nullopt;
    }
    return unquote(e->value);
  }

  void missing(const std::string& section, const std::string& key) {
    error(0, "[" + section + "] missing required key '" + key + "'");
  }

  void error(int line, std::string message) { diags_.push_back({line, std::move(message)}); }

 private:
  SectionMap& sections_;
  std::vector<ConfigDiagnostic>& diags_;
};

SectionMap tokenize(const std::string& text, std::vector<ConfigDiagnostic>& diags) {
  SectionMap sections;
  std::istringstream in(text);
  std::string raw;
  std::string current;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    // Strip comments outside quotes.
    bool quoted = false;
    std::string line;
    for (char c : raw) {
      if (c == '"') quoted = !quoted;
      if (!quoted && (c == '#' || c == ';')) break;
      line += c;
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        diags.push_back({line_no, "malformed section header '" + line + "'"});
        continue;
      }
      current = trim(line.substr(1, line.size() - 2));
      if (known_keys().count(current) == 0) diags.push_back({line_no, "unknown section [" + current + "]"});
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      diags.push_back({line_no, "expected 'key = value', got '" + line + "'"});
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (current.empty()) {
      diags.push_back({line_no, "key '" + key + "' appears before any section"});
      continue;
    }
    const auto known = known_keys().find(current);
    if (known != known_keys().end() && known->second.count(key) == 0) {
      diags.push_back({line_no, "unknown key '" + key + "' in [" + current + "]"});
      continue;
    }
    auto& section = sections[current];
    if (section.count(key) > 0) {
      diags.push_back({line_no, "duplicate key '" + key + "' in [" + current + "]"});
      continue;
    }
    section[key] = Entry{value, line_no, false};
  }
  return sections;
}

std::optional<ProfileKind> parse_kind(const std::string& s) {
  if (s == "constant") return ProfileKind::Constant;
  if (s == "cosine_bump") return ProfileKind::CosineBump;
  if (s == "gaussian_dip") return ProfileKind::GaussianDip;
  if (s == "gaussian") return ProfileKind::Gaussian;
  if (s == "barenblatt") return ProfileKind::Barenblatt;
  return std::nullopt;
}

std::vector<std::string> profile_params(ProfileKind kind, int dim) {
  std::vector<std::string> params;
  switch (kind) {
    case ProfileKind::Constant: params = {"base"}; break;
    case ProfileKind::CosineBump: params = {"base", "amplitude"}; break;
    case ProfileKind::GaussianDip: params = {"base", "floor", "width", "center_x", "center_y"}; break;
    case ProfileKind::Gaussian: params = {"base", "amplitude", "width", "center_x", "center_y"}; break;
    case ProfileKind::Barenblatt: params = {"C", "t0"}; break;
  }
  if (dim == 1) std::erase(params, std::string("center_y"));
  return params;
}

double& profile_field(Profile& p, const std::string& name) {
  if (name == "base") return p.base;
  if (name == "amplitude") return p.amplitude;
  if (name == "floor") return p.floor;
  if (name == "width") return p.width;
  if (name == "center_x") return p.center_x;
  if (name == "center_y") return p.center_y;
  if (name == "C") return p.C;
  return p.t0;
}

Profile read_profile(Reader& r, const std::string& prefix, int dim) {
  Profile p;
  const auto kind_name = r.text("initial", prefix, true);
  if (!kind_name) return p;
  const auto kind = parse_kind(*kind_name);
  if (!kind) {
    r.error(r.line_of("initial", prefix), "unknown profile '" + *kind_name + "' for " + prefix);
    return p;
  }
  p.kind = *kind;
  const auto params = profile_params(p.kind, 2);
  for (const char* name : {"base", "amplitude", "floor", "width", "center_x", "center_y", "C", "t0"}) {
    const std::string key = prefix + "_" + name;
    if (!r.has("initial", key)) continue;
    if (std::find(params.begin(), params.end(), name) == params.end() || (dim == 1 && key.ends_with("center_y"))) {
      r.error(r.line_of("initial", key), "key '" + key + "' does not apply to profile '" + *kind_name + "'");
      r.find("initial", key);
      continue;
    }
    r.number("initial", key, profile_field(p, name));
  }
  return p;
}

std::vector<std::pair<double, double>> parse_table(const std::string& text, bool& ok) {
  std::vector<std::pair<double, double>> table;
  ok = true;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      ok = false;
      return table;
    }
    const std::string a = trim(item.substr(0, colon));
    const std::string b = trim(item.substr(colon + 1));
    double s = 0.0, d = 0.0;
    const auto ra = std::from_chars(a.data(), a.data() + a.size(), s);
    const auto rb = std::from_chars(b.data(), b.data() + b.size(), d);
    if (ra.ec != std::errc() || rb.ec != std::errc() || ra.ptr != a.data() + a.size() ||
        rb.ptr != b.data() + b.size()) {
      ok = false;
      return table;
    }
    table.emplace_back(s, d);
  }
  return table;
}

void read_model(Reader& r, RunConfig& cfg) {
  ModelSpec& model = cfg.model;
  const int line = r.line_of("model", "diffusion");
  const auto diffusion = r.text("model", "diffusion", true).value_or("porous_medium");
  bool m_given = r.has("model", "m");
  if (diffusion == "porous_medium") {
    PorousMedium pm;
    r.number("model", "m", pm.m);
    model.diffusion = pm;
    model.p = pm.m;  // default p = m for the porous-medium family
  } else if (diffusion == "linear") {
    LinearDiffusion lin;
    r.number("model", "d", lin.d);
    model.diffusion = lin;
  } else if (diffusion == "custom") {
    const auto table_text = r.text("model", "table", true);
    if (table_text) {
      bool ok = false;
      auto table = parse_table(*table_text, ok);
      if (!ok) {
        r.error(r.line_of("model", "table"), "table must be a comma list of s:D pairs");
      } else {
        try {
          model.diffusion = CustomDiffusion(std::move(table));
        } catch (const std::exception& e) {
          r.error(r.line_of("model", "table"), e.what());
        }
      }
    }
  } else {
    r.error(line, "unknown diffusion '" + diffusion + "'");
  }
  if (diffusion != "porous_medium" && m_given) r.error(r.line_of("model", "m"), "m applies only to porous_medium");
  if (diffusion != "linear" && r.has("model", "d")) r.error(r.line_of("model", "d"), "d applies only to linear");
  if (diffusion != "custom" && r.has("model", "table")) {
    r.error(r.line_of("model", "table"), "table applies only to custom");
  }
  r.find("model", "m");
  r.find("model", "d");
  r.find("model", "table");

  const auto sensitivity = r.text("model", "sensitivity").value_or(r.has("model", "kappa") ? "saturating" : "constant");
  if (sensitivity == "constant") {
    ConstantSensitivity s;
    r.number("model", "chi", s.chi);
    if (r.has("model", "kappa")) r.error(r.line_of("model", "kappa"), "kappa applies only to saturating sensitivity");
    r.find("model", "kappa");
    model.sensitivity = s;
  } else if (sensitivity == "saturating") {
    SaturatingSensitivity s;
    r.number("model", "chi", s.chi);
    r.number("model", "kappa", s.kappa);
    model.sensitivity = s;
  } else {
    r.error(r.line_of("model", "sensitivity"), "unknown sensitivity '" + sensitivity + "'");
  }

  const auto source = r.text("model", "source").value_or("zero");
  if (source == "zero") {
    model.source = ZeroSource{};
    for (const char* key : {"r", "K"}) {
      if (r.has("model", key)) r.error(r.line_of("model", key), std::string(key) + " applies only to logistic source");
      r.find("model", key);
    }
  } else if (source == "logistic") {
    LogisticSource f;
    r.number("model", "r", f.r);
    r.number("model", "K", f.K);
    model.source = f;
  } else {
    r.error(r.line_of("model", "source"), "unknown source '" + source + "'");
  }

  const auto mode = r.text("model", "signal_mode").value_or("consumption");
  if (mode == "consumption") {
    model.signal_mode = SignalMode::Consumption;
  } else if (mode == "keller_segel") {
    model.signal_mode = SignalMode::KellerSegel;
  } else {
    r.error(r.line_of("model", "signal_mode"), "unknown signal_mode '" + mode + "'");
  }
  r.number("model", "s0", model.s0);
  r.number("model", "p", model.p);
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigDiagnostic> diagnostics)
    : std::runtime_error(join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::Constant: return "constant";
    case ProfileKind::CosineBump: return "cosine_bump";
    case ProfileKind::GaussianDip: return "gaussian_dip";
    case ProfileKind::Gaussian: return "gaussian";
    case ProfileKind::Barenblatt: return "barenblatt";
  }
  return "constant";
}

double profile_floor(const Profile& p) {
  switch (p.kind) {
    case ProfileKind::Constant: return p.base;
    case ProfileKind::CosineBump: return p.base - std::abs(p.amplitude);
    case ProfileKind::GaussianDip: return std::min(p.floor, p.base);
    case ProfileKind::Gaussian: return std::min(p.base, p.base + p.amplitude);
    case ProfileKind::Barenblatt: return 0.0;
  }
  return 0.0;
}

double barenblatt(double r, double t, double m, double C, int dim) {
  const double n = dim;
  const double alpha = n / (n * (m - 1.0) + 2.0);
  const double beta = alpha / n;
  const double k = alpha * (m - 1.0) / (2.0 * m * n);
  const double core = C - k * r * r * std::pow(t, -2.0 * beta);
  if (core <= 0.0) return 0.0;
  return std::pow(t, -alpha) * std::pow(core, 1.0 / (m - 1.0));
}

Field realize(const Profile& p, const GridSpec& grid, const ModelSpec& model) {
  const double Lx = grid.lengths[0];
  const double Ly = grid.lengths[1];
  const bool two_d = grid.dim == 2;
  auto r2 = [&](double x, double y) {
    const double dx = x - p.center_x;
    const double dy = two_d ? y - p.center_y : 0.0;
    return dx * dx + dy * dy;
  };
  std::function<double(double, double)> f;
  switch (p.kind) {
    case ProfileKind::Constant: f = [&](double, double) { return p.base; }; break;
    case ProfileKind::CosineBump:
      f = [&](double x, double y) {
        double shape = std::cos(std::numbers::pi * x / Lx);
        if (two_d) shape *= std::cos(std::numbers::pi * y / Ly);
        return p.base + p.amplitude * shape;
      };
      break;
    case ProfileKind::GaussianDip:
      f = [&](double x, double y) {
        return p.floor + (p.base - p.floor) * (1.0 - std::exp(-r2(x, y) / (p.width * p.width)));
      };
      break;
    case ProfileKind::Gaussian:
      f = [&](double x, double y) { return p.base + p.amplitude * std::exp(-r2(x, y) / (p.width * p.width)); };
      break;
    case ProfileKind::Barenblatt: {
      const auto* pm = std::get_if<PorousMedium>(&model.diffusion);
      if (pm == nullptr) throw std::invalid_argument("barenblatt data needs porous_medium diffusion");
      const double m = pm->m;
      f = [&, m](double x, double y) {
        const double dx = x - 0.5 * Lx;
        const double dy = two_d ? y - 0.5 * Ly : 0.0;
        return barenblatt(std::sqrt(dx * dx + dy * dy), p.t0, m, p.C, grid.dim);
      };
      break;
    }
  }
  return sample(grid, f);
}

RunConfig parse_config(const std::string& text) {
  std::vector<ConfigDiagnostic> diags;
  SectionMap sections = tokenize(text, diags);
  Reader r(sections, diags);
  RunConfig cfg;

  // [grid]
  r.integer("grid", "dim", cfg.grid.dim, true);
  r.number("grid", "length_x", cfg.grid.lengths[0], true);
  r.integer("grid", "cells_x", cfg.grid.cells[0], true);
  if (cfg.grid.dim == 2) {
    r.number("grid", "length_y", cfg.grid.lengths[1], true);
    r.integer("grid", "cells_y", cfg.grid.cells[1], true);
  } else {
    for (const char* key : {"length_y", "cells_y"}) {
      if (r.has("grid", key)) r.error(r.line_of("grid", key), std::string(key) + " applies only to dim = 2");
      r.find("grid", key);
    }
  }
  try {
    validate_grid(cfg.grid);
  } catch (const std::exception& e) {
    r.error(r.line_of("grid", "cells_x"), e.what());
  }

  // [model]
  read_model(r, cfg);
  try {
    validate_parameters(cfg.model);
  } catch (const std::exception& e) {
    r.error(r.line_of("model", "diffusion"), e.what());
  }

  // [stepper]
  StepperConfig& st = cfg.stepper;
  r.number("stepper", "cfl_safety", st.cfl_safety);
  r.number("stepper", "dt_max", st.dt_max);
  r.number("stepper", "blowup_threshold", st.blowup_threshold);
  r.number("stepper", "deadcore_epsilon", st.deadcore_epsilon);
  r.number("stepper", "t_end", st.t_end, true);
  r.number("stepper", "solver_tolerance", st.solver_tolerance);
  r.number("stepper", "c1", cfg.certificate.c1);
  if (r.has("stepper", "certificate_tolerance")) {
    double tol = 0.0;
    r.number("stepper", "certificate_tolerance", tol);
    cfg.certificate.tolerance = tol;
    if (!(tol > 0.0)) r.error(r.line_of("stepper", "certificate_tolerance"), "certificate_tolerance must be positive");
  }
  if (cfg.certificate.c1 < 0.0) r.error(r.line_of("stepper", "c1"), "c1 must be positive (or 0 for the default)");
  try {
    validate_stepper_config(st);
  } catch (const std::exception& e) {
    r.error(r.line_of("stepper", "t_end"), e.what());
  }

  // [initial]
  cfg.initial.u0 = read_profile(r, "u0", cfg.grid.dim);
  cfg.initial.v0 = read_profile(r, "v0", cfg.grid.dim);
  const auto& u0 = cfg.initial.u0;
  const auto& v0 = cfg.initial.v0;
  if (r.has("initial", "u0")) {
    if (u0.kind == ProfileKind::Barenblatt) {
      if (!std::holds_alternative<PorousMedium>(cfg.model.diffusion)) {
        r.error(r.line_of("initial", "u0"), "barenblatt data needs porous_medium diffusion");
      }
      if (!(u0.C > 0.0) || !(u0.t0 > 0.0)) r.error(r.line_of("initial", "u0"), "barenblatt needs C > 0 and t0 > 0");
    } else if (!(profile_floor(u0) > 0.0)) {
      r.error(r.line_of("initial", "u0"), "initial floor must be positive (u0 >= delta0 > 0)");
    }
    if (u0.kind == ProfileKind::GaussianDip && !(u0.base > u0.floor)) {
      r.error(r.line_of("initial", "u0"), "gaussian_dip needs base above floor");
    }
    if ((u0.kind == ProfileKind::GaussianDip || u0.kind == ProfileKind::Gaussian) && !(u0.width > 0.0)) {
      r.error(r.line_of("initial", "u0"), "profile width must be positive");
    }
  }
  if (r.has("initial", "v0")) {
    if (v0.kind == ProfileKind::Barenblatt || v0.kind == ProfileKind::GaussianDip) {
      r.error(r.line_of("initial", "v0"), "v0 profile must be constant, cosine_bump or gaussian");
    } else {
      const double top = v0.kind == ProfileKind::Gaussian ? std::max(v0.base, v0.base + v0.amplitude)
                                                          : v0.base + std::abs(v0.amplitude);
      if (!(profile_floor(v0) >= 0.0) || !(top > 0.0)) {
        r.error(r.line_of("initial", "v0"), "v0 must be nonnegative and not identically zero");
      }
      if (v0.kind == ProfileKind::Gaussian && !(v0.width > 0.0)) {
        r.error(r.line_of("initial", "v0"), "profile width must be positive");
      }
    }
  }

  // [probes]
  r.integer("probes", "record_every", cfg.probes.record_every);
  if (cfg.probes.record_every < 1 || cfg.probes.record_every > 20) {
    r.error(r.line_of("probes", "record_every"), "record_every must lie in [1, 20] steps for certificate runs");
  }
  if (const auto times = r.text("probes", "snapshot_times")) {
    std::istringstream in(*times);
    std::string item;
    while (std::getline(in, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      double t = 0.0;
      const auto res = std::from_chars(item.data(), item.data() + item.size(), t);
      if (res.ec != std::errc() || res.ptr != item.data() + item.size()) {
        r.error(r.line_of("probes", "snapshot_times"), "snapshot time '" + item + "' is not a number");
        continue;
      }
      if (t < 0.0 || t > st.t_end) {
        r.error(r.line_of("probes", "snapshot_times"), "snapshot time " + item + " lies outside [0, t_end]");
      }
      cfg.probes.snapshot_times.push_back(t);
    }
    if (!std::is_sorted(cfg.probes.snapshot_times.begin(), cfg.probes.snapshot_times.end())) {
      r.error(r.line_of("probes", "snapshot_times"), "snapshot times must be listed in increasing order");
    }
  }

  // [output]
  if (auto dir = r.text("output", "directory")) cfg.output.directory = *dir;
  if (auto prefix = r.text("output", "prefix")) cfg.output.prefix = *prefix;

  if (!diags.empty()) {
    std::stable_sort(diags.begin(), diags.end(),
                     [](const ConfigDiagnostic& a, const ConfigDiagnostic& b) { return a.line < b.line; });
    throw ConfigError(std::move(diags));
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({{0, "cannot open config file '" + path + "'"}});
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_text(const RunConfig& c) {
  std::ostringstream os;
  auto num = [](double x) { return format_double(x); };

  os << "[grid]\n";
  os << "dim = " << c.grid.dim << "\n";
  os << "length_x = " << num(c.grid.lengths[0]) << "\n";
  os << "cells_x = " << c.grid.cells[0] << "\n";
  if (c.grid.dim == 2) {
    os << "length_y = " << num(c.grid.lengths[1]) << "\n";
    os << "cells_y = " << c.grid.cells[1] << "\n";
  }

  os << "\n[model]\n";
  if (const auto* pm = std::get_if<PorousMedium>(&c.model.diffusion)) {
    os << "diffusion = \"porous_medium\"\nm = " << num(pm->m) << "\n";
  } else if (const auto* lin = std::get_if<LinearDiffusion>(&c.model.diffusion)) {
    os << "diffusion = \"linear\"\nd = " << num(lin->d) << "\n";
  } else {
    const auto& custom = std::get<CustomDiffusion>(c.model.diffusion);
    os << "diffusion = \"custom\"\ntable = \"";
    for (std::size_t k = 0; k < custom.table.size(); ++k) {
      if (k > 0) os << ", ";
      os << num(custom.table[k].first) << ":" << num(custom.table[k].second);
    }
    os << "\"\n";
  }
  if (const auto* s = std::get_if<ConstantSensitivity>(&c.model.sensitivity)) {
    os << "sensitivity = \"constant\"\nchi = " << num(s->chi) << "\n";
  } else {
    const auto& sat = std::get<SaturatingSensitivity>(c.model.sensitivity);
    os << "sensitivity = \"saturating\"\nchi = " << num(sat.chi) << "\nkappa = " << num(sat.kappa) << "\n";
  }
  if (const auto* f = std::get_if<LogisticSource>(&c.model.source)) {
    os << "source = \"logistic\"\nr = " << num(f->r) << "\nK = " << num(f->K) << "\n";
  } else {
    os << "source = \"zero\"\n";
  }
  os << "signal_mode = \"" << to_string(c.model.signal_mode) << "\"\n";
  os << "s0 = " << num(c.model.s0) << "\np = " << num(c.model.p) << "\n";

  os << "\n[stepper]\n";
  os << "cfl_safety = " << num(c.stepper.cfl_safety) << "\n";
  os << "dt_max = " << num(c.stepper.dt_max) << "\n";
  os << "blowup_threshold = " << num(c.stepper.blowup_threshold) << "\n";
  os << "deadcore_epsilon = " << num(c.stepper.deadcore_epsilon) << "\n";
  os << "t_end = " << num(c.stepper.t_end) << "\n";
  os << "solver_tolerance = " << num(c.stepper.solver_tolerance) << "\n";
  os << "c1 = " << num(c.certificate.c1) << "\n";
  if (c.certificate.tolerance) os << "certificate_tolerance = " << num(*c.certificate.tolerance) << "\n";

  os << "\n[initial]\n";
  for (const auto& [prefix, profile] : {std::pair{"u0", c.initial.u0}, std::pair{"v0", c.initial.v0}}) {
    os << prefix << " = \"" << to_string(profile.kind) << "\"\n";
    Profile copy = profile;
    for (const auto& name : profile_params(profile.kind, c.grid.dim)) {
      os << prefix << "_" << name << " = " << num(profile_field(copy, name)) << "\n";
    }
  }

  os << "\n[probes]\n";
  os << "record_every = " << c.probes.record_every << "\n";
  os << "snapshot_times = \"";
  for (std::size_t k = 0; k < c.probes.snapshot_times.size(); ++k) {
    if (k > 0) os << ", ";
    os << num(c.probes.snapshot_times[k]);
  }
  os << "\"\n";

  os << "\n[output]\n";
  os << "directory = \"" << c.output.directory << "\"\n";
  os << "prefix = \"" << c.output.prefix << "\"\n";
  return os.str();
}

}  // namespace deadcore
