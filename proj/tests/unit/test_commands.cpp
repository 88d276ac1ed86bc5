#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "deadcore/commands.hpp"
#include "deadcore/config.hpp"

namespace {

using namespace deadcore;
using namespace deadcore::cli;
namespace fs = std::filesystem;

class CommandsTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("deadcore_cmd_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    unsetenv("SIM_OUTPUT_DIR");
  }
  void TearDown() override {
    unsetenv("SIM_OUTPUT_DIR");
    fs::remove_all(dir_);
  }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  std::string base(const std::string& model, const std::string& stepper, const std::string& initial) {
    const std::string diffusion = model.find("diffusion") == std::string::npos ? "diffusion = \"porous_medium\"\n" : "";
    return "[grid]\ndim = 1\nlength_x = 1\ncells_x = 32\n[model]\n" + diffusion + model + "[stepper]\n" + stepper +
           "[initial]\n" + initial + "[output]\ndirectory = \"" + (dir_ / "out").string() + "\"\nprefix = \"t\"\n";
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CommandsTest, BlowUpExitCode) {
  const auto path = write("blow.ini", base("chi = 1\n", "t_end = 0.1\nblowup_threshold = 1.0\n",
                                           "u0 = \"cosine_bump\"\nu0_base = 1.5\nu0_amplitude = 0.5\n"
                                           "v0 = \"constant\"\n"));
  EXPECT_EQ(cmd_certify(path, out_, err_), kBlowUp);
}

TEST_F(CommandsTest, MalformedConfigIsUsageError) {
  const auto path = write("bad.ini", "[grid]\ndim = 1\ncells_x = many\n");
  EXPECT_EQ(cmd_run(path, out_, err_), kUsage);
  EXPECT_NE(err_.str().find("line 3"), std::string::npos) << err_.str();
  EXPECT_EQ(cmd_certify((dir_ / "missing.ini").string(), out_, err_), kUsage);
}

TEST_F(CommandsTest, ValidateModelExitCodes) {
  const std::string stepper = "t_end = 0.1\n";
  const std::string initial = "u0 = \"constant\"\nv0 = \"constant\"\n";
  const auto dip = write("dip.ini", base("diffusion = \"custom\"\ntable = \"0:0, 0.5:1, 1:0.2, 2:2\"\n", stepper,
                                         initial));
  EXPECT_EQ(cmd_validate_model(dip, out_, err_), kCertificateViolation);
  EXPECT_NE(out_.str().find("admissible: false"), std::string::npos);

  std::ostringstream out2;
  const auto lin = write("lin.ini", base("diffusion = \"linear\"\nd = 1\np = 1.5\n", stepper, initial));
  EXPECT_EQ(cmd_validate_model(lin, out2, err_), kOk);
  EXPECT_NE(out2.str().find("admissible: true"), std::string::npos);
}

TEST_F(CommandsTest, CertifyEmitsJsonWithContractKeys) {
  const auto path = write("c.ini", base("chi = 1\n", "t_end = 0.2\n",
                                        "u0 = \"cosine_bump\"\nu0_amplitude = 0.5\n"
                                        "v0 = \"cosine_bump\"\nv0_amplitude = 0.5\n"));
  ASSERT_EQ(cmd_certify(path, out_, err_), kOk) << err_.str();
  const auto j = nlohmann::json::parse(out_.str());
  for (const char* key : {"A", "B", "delta_u", "K2", "C_S", "M_u", "T", "min_margin", "holds", "tolerance", "C1",
                          "lambda1", "gradient_bound_holds"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_TRUE(j["holds"].get<bool>());
  EXPECT_EQ(j["T"].get<double>(), 0.2);
}

TEST_F(CommandsTest, RunIsDeterministicAndHonoursOutputOverride) {
  const auto path = write("r.ini", base("chi = 1\n", "t_end = 0.1\n",
                                        "u0 = \"cosine_bump\"\nu0_amplitude = 0.5\n"
                                        "v0 = \"cosine_bump\"\nv0_amplitude = 0.5\n"));
  std::string text = slurp(path);
  text += "[probes]\nsnapshot_times = \"0, 0.1\"\n";
  write("r.ini", text);

  const fs::path over1 = dir_ / "env1";
  const fs::path over2 = dir_ / "env2";
  setenv("SIM_OUTPUT_DIR", over1.c_str(), 1);
  ASSERT_EQ(cmd_run(path, out_, err_), kOk) << err_.str();
  setenv("SIM_OUTPUT_DIR", over2.c_str(), 1);
  ASSERT_EQ(cmd_run(path, out_, err_), kOk) << err_.str();
  EXPECT_FALSE(fs::exists(dir_ / "out"));

  for (const char* name : {"t_probes.csv", "t_certificate.json", "t_snapshot_0000_u.txt", "t_snapshot_0001_v.txt"}) {
    ASSERT_TRUE(fs::exists(over1 / name)) << name;
    EXPECT_EQ(slurp(over1 / name), slurp(over2 / name)) << name;
  }
  const auto first_line = [](const std::string& s) { return s.substr(0, s.find('\n')); };
  EXPECT_EQ(first_line(slurp(over1 / "t_probes.csv")),
            "t,min_u,max_u,sup_v,sup_grad_v,sup_lap_v,mass_u,mass_v,deadcore_cells");
  EXPECT_EQ(first_line(slurp(over1 / "t_snapshot_0001_u.txt")), "# t=0.1 nx=32");
}

TEST_F(CommandsTest, ConvergenceUsageErrors) {
  const auto path = write("h.ini", base("diffusion = \"linear\"\nd = 1\nchi = 0\n", "t_end = 0.05\ndt_max = 1\n",
                                        "u0 = \"cosine_bump\"\nu0_amplitude = 0.5\nv0 = \"constant\"\n"));
  EXPECT_EQ(cmd_convergence(path, 1, out_, err_), kUsage);
  const auto pm = write("p.ini", base("chi = 1\n", "t_end = 0.05\n",
                                      "u0 = \"cosine_bump\"\nu0_amplitude = 0.5\nv0 = \"constant\"\n"));
  EXPECT_EQ(cmd_convergence(pm, 3, out_, err_), kUsage);
  std::ostringstream table;
  ASSERT_EQ(cmd_convergence(path, 3, table, err_), kOk) << err_.str();
  EXPECT_EQ(table.str().substr(0, table.str().find('\n')), "level,cells_x,h,linf_error,l1_error,linf_order,l1_order");
}

TEST(SnapshotText, HeaderAndRows) {
  GridSpec g;
  g.dim = 2;
  g.lengths = {1.0, 1.0};
  g.cells = {4, 4};
  Field f(g, 0.5);
  f(3, 0) = 2.0;
  const std::string s = snapshot_text(0.25, f);
  EXPECT_EQ(s.substr(0, s.find('\n')), "# t=0.25 nx=4 ny=4");
  EXPECT_NE(s.find("\n0.5 0.5 0.5 2\n"), std::string::npos) << s;
}

TEST(RunExperiment, RejectsBarenblattData) {
  const RunConfig c = load_config(std::string(DEADCORE_SCENARIO_DIR) + "/barenblatt_pm2.ini");
  EXPECT_THROW(run_experiment(c), std::invalid_argument);
}

}  // namespace
