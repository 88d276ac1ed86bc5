#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "deadcore/config.hpp"

namespace {

using namespace deadcore;

const std::string kMinimal =
    "[grid]\n"
    "dim = 1\n"
    "length_x = 1\n"
    "cells_x = 32\n"
    "[model]\n"
    "diffusion = \"porous_medium\"\n"
    "[stepper]\n"
    "t_end = 0.5\n"
    "[initial]\n"
    "u0 = \"constant\"\n"
    "v0 = \"constant\"\n";

std::string with_line(const std::string& text, const std::string& after, const std::string& line) {
  const auto at = text.find(after);
  std::string out = text;
  out.insert(at + after.size(), line + "\n");
  return out;
}

TEST(Config, MinimalConfigTakesDefaults) {
  const RunConfig c = parse_config(kMinimal);
  EXPECT_EQ(c.grid.cells[0], 32);
  EXPECT_EQ(c.stepper.t_end, 0.5);
  EXPECT_EQ(c.stepper.cfl_safety, 0.4);
  EXPECT_EQ(c.stepper.dt_max, 1e-2);
  EXPECT_EQ(c.stepper.blowup_threshold, 1e6);
  EXPECT_EQ(c.stepper.deadcore_epsilon, 1e-12);
  EXPECT_EQ(c.probes.record_every, 10);
  EXPECT_TRUE(c.probes.snapshot_times.empty());
  EXPECT_EQ(c.output.directory, "out");
  EXPECT_EQ(c.output.prefix, "run");
  EXPECT_EQ(c.initial.u0.kind, ProfileKind::Constant);
  EXPECT_EQ(profile_floor(c.initial.u0), 1.0);
  EXPECT_FALSE(c.certificate.tolerance.has_value());
}

TEST(Config, ZeroInitialFloorRejected) {
  const std::string text = with_line(kMinimal, "u0 = \"constant\"\n", "u0_base = 0");
  try {
    parse_config(text);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    ASSERT_EQ(e.diagnostics().size(), 1u);
    EXPECT_EQ(e.diagnostics()[0].line, 10);
    EXPECT_NE(e.diagnostics()[0].message.find("initial floor must be positive"), std::string::npos);
  }
}

TEST(Config, IdenticallyZeroSignalRejected) {
  const std::string text = with_line(kMinimal, "v0 = \"constant\"\n", "v0_base = 0");
  try {
    parse_config(text);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    ASSERT_EQ(e.diagnostics().size(), 1u);
    EXPECT_NE(e.diagnostics()[0].message.find("v0 must be nonnegative and not identically zero"), std::string::npos);
  }
}

TEST(Config, ReportsEveryProblemWithLineNumbers) {
  const std::string text =
      "[grid]\n"
      "dim = 1\n"
      "length_x = one\n"
      "cells_x = 32\n"
      "colour = 3\n"
      "[stepper]\n"
      "cfl_safety = 0.4\n"
      "[initial]\n"
      "u0 = \"constant\"\n"
      "v0 = \"constant\"\n"
      "v0_width = 0.2\n";
  try {
    parse_config(text);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    const auto& d = e.diagnostics();
    ASSERT_EQ(d.size(), 5u);
    EXPECT_EQ(d[0].line, 0);
    EXPECT_NE(d[0].message.find("diffusion"), std::string::npos);
    EXPECT_EQ(d[1].line, 0);
    EXPECT_NE(d[1].message.find("t_end"), std::string::npos);
    EXPECT_EQ(d[2].line, 3);
    EXPECT_EQ(d[3].line, 5);
    EXPECT_NE(d[3].message.find("colour"), std::string::npos);
    EXPECT_EQ(d[4].line, 11);
  }
}

TEST(Config, RejectsOutOfRangeProbesAndSnapshots) {
  EXPECT_THROW(parse_config(kMinimal + "[probes]\nrecord_every = 50\n"), ConfigError);
  EXPECT_THROW(parse_config(kMinimal + "[probes]\nsnapshot_times = \"0, 0.7\"\n"), ConfigError);
  EXPECT_THROW(parse_config(kMinimal + "[probes]\nsnapshot_times = \"0.3, 0.1\"\n"), ConfigError);
  EXPECT_NO_THROW(parse_config(kMinimal + "[probes]\nsnapshot_times = \"0, 0.25, 0.5\"\n"));
}

TEST(Config, RejectsBadModelParameters) {
  EXPECT_THROW(parse_config(kMinimal + "[model]\ndiffusion = \"porous_medium\"\nm = 0.5\n"), ConfigError);
  EXPECT_THROW(parse_config(kMinimal + "[model]\ndiffusion = \"linear\"\nm = 2\n"), ConfigError);
  EXPECT_THROW(parse_config(kMinimal + "[model]\nsource = \"logistic\"\nr = 1\nK = -1\n"), ConfigError);
}

TEST(Config, EveryShippedScenarioRoundTrips) {
  int seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(DEADCORE_SCENARIO_DIR)) {
    if (entry.path().extension() != ".ini") continue;
    ++seen;
    const RunConfig c = load_config(entry.path().string());
    EXPECT_EQ(parse_config(to_text(c)), c) << entry.path();
  }
  EXPECT_GE(seen, 6);
}

TEST(Config, MissingFileIsConfigError) { EXPECT_THROW(load_config("/nonexistent/run.ini"), ConfigError); }

TEST(Barenblatt, MassIsConservedInTime) {
  // Radial profile mass in 1-D via midpoint sums at two times.
  auto mass = [](double t) {
    double sum = 0.0;
    const int n = 200000;
    const double R = 2.0;
    for (int k = 0; k < n; ++k) sum += barenblatt(-R + (k + 0.5) * 2.0 * R / n, t, 2.0, 1.0 / 12.0, 1);
    return sum * 2.0 * R / n;
  };
  EXPECT_NEAR(mass(0.01), mass(0.05), 1e-6);
}

}  // namespace
