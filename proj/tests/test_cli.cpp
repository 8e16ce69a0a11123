#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "dcost/cli.hpp"
#include "dcost/errors.hpp"

using namespace dcost;
using namespace dcost::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("dcost_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string(DCOST_BINARY) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, StabilizeDefaults) {
  RunConfig config;
  config.out = scratch("stabilize").string();
  const auto result = cmd_stabilize(config);
  ASSERT_EQ(result.runs.size(), 4u);
  for (const auto& run : result.runs) {
    EXPECT_LE(run.relative_residual, 1e-5) << run.name;
    EXPECT_TRUE(fs::exists(run.csv_path)) << run.csv_path;
    EXPECT_NEAR(run.energy_trajectory, run.energy_closed_form, 1e-5 * run.energy_closed_form);
  }
  const auto summary = nlohmann::json::parse(slurp(fs::path(config.out) / "summary.json"));
  EXPECT_EQ(summary.at("runs").size(), 4u);
  EXPECT_EQ(summary.at("energy").size(), 6u);
}

TEST(Cli, StabilizeNominalOnly) {
  RunConfig config;
  config.out = scratch("nominal").string();
  config.disturbances = {"nominal"};
  const auto result = cmd_stabilize(config);
  ASSERT_EQ(result.runs.size(), 1u);
  EXPECT_NEAR(result.runs[0].energy_trajectory, result.report.E_N, 1e-5 * result.report.E_N);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(config.out)) {
    files += entry.path().extension() == ".csv";
  }
  EXPECT_EQ(files, 1u);
}

TEST(Cli, ZeroHorizonRejected) {
  RunConfig config;
  config.t_f = 0.0;
  config.out = scratch("zero").string();
  EXPECT_THROW(cmd_stabilize(config), ConfigError);
  const fs::path cfg = fs::path(scratch("zero_cfg")) += ".json";
  std::ofstream(cfg) << R"({"tf": 0})";
  EXPECT_EQ(run_tool("stabilize --config " + cfg.string() + " --out " + config.out), kConfigError);
  // the flag wins over the file
  EXPECT_EQ(run_tool("stabilize --config " + cfg.string() + " --tf 1 --steps 200 --out " + config.out),
            kOk);
  fs::remove(cfg);
}

TEST(Cli, ExitCodes) {
  const auto out = scratch("codes").string();
  fs::create_directories(out);
  EXPECT_EQ(run_tool("energy --out " + out), kOk);
  EXPECT_EQ(run_tool("energy --tf-grid -1 --out " + out), kConfigError);
  EXPECT_EQ(run_tool("energy --model nonexistent --out " + out), kConfigError);
  const fs::path bad = fs::path(out) / "bad.json";
  std::ofstream(bad) << R"({"n": 2, "p": 1, "A": [[0, 1], [0]], "B": [[0], [1]]})";
  EXPECT_EQ(run_tool("model --model " + bad.string()), kParseError);
  const fs::path dead = fs::path(out) / "dead.json";
  std::ofstream(dead) << R"({"n": 2, "p": 1, "A": [[0, 1], [0, 0]], "B": [[0], [0]]})";
  EXPECT_EQ(run_tool("model --model " + dead.string()), kValidationError);
  // a chain of integrators over a tiny horizon has a numerically singular Gramian
  const fs::path chain = fs::path(out) / "chain.json";
  std::ofstream(chain) << R"({"n": 4, "p": 1,
    "A": [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]],
    "B": [[0], [0], [0], [1]]})";
  EXPECT_EQ(run_tool("energy --model " + chain.string() +
                     " --x0 1 1 1 1 --constant-sign 1 1 1 1 --frequencies 1 2 3 4 --tf 1e-5 --out " + out),
            kNumericalError);
}

TEST(Cli, BoundAccuracyTrends) {
  RunConfig config;
  config.out = scratch("accuracy").string();
  config.tf_grid = {0.1, 0.5, 1.0, 2.0, 5.0};
  const auto result = cmd_bound_accuracy(config);
  ASSERT_EQ(result.classes.size(), 3u);
  ASSERT_EQ(result.classes[0], "constant");
  ASSERT_EQ(result.classes[1], "sinusoid");
  for (std::size_t k = 0; k < result.rows.size(); ++k) {
    for (double r : result.rows[k].ratios) {
      EXPECT_GT(r, 0.0);
      EXPECT_LE(r, 1.0);
    }
    EXPECT_GE(result.rows[k].ratios[0], result.rows[k].ratios[1]);
    if (k > 0) {
      EXPECT_LT(result.rows[k].ratios[0], result.rows[k - 1].ratios[0]);
    }
  }
  EXPECT_TRUE(fs::exists(fs::path(config.out) / "bound_accuracy.csv"));
}

TEST(Cli, MetricsSweep) {
  RunConfig config;
  config.out = scratch("sweep").string();
  config.R_grid = {1.0, 10.0, 100.0, 1000.0};
  config.tf_grid = {0.5, 2.0};
  config.samples = 100;
  config.workers = 3;
  const auto result = cmd_metrics_sweep(config);
  ASSERT_EQ(result.rows.size(), 8u);
  for (std::size_t k = 0; k < result.rows.size(); ++k) {
    const auto& row = result.rows[k];
    EXPECT_EQ(row.additive_violations, 0u);
    EXPECT_EQ(row.multiplicative_violations, 0u);
    EXPECT_LE(row.diff_max, row.metrics.r_A_bound);
    if (k % 4 != 0) {
      EXPECT_GE(row.metrics.r_M_bound, result.rows[k - 1].metrics.r_M_bound);
    }
    if (row.metrics.R == 100.0 && row.metrics.t_f == 0.5) {
      EXPECT_NEAR(row.metrics.r_M_bound, 0.45, 0.02);
      EXPECT_GE(row.ratio_min, 0.9);
      EXPECT_LE(row.ratio_max, 1.0);
    }
  }
}

TEST(Cli, SweepIsDeterministicAcrossWorkers) {
  RunConfig config;
  config.R_grid = {1.0, 100.0};
  config.tf_grid = {0.1, 1.0};
  config.samples = 50;
  config.out = scratch("det1").string();
  config.workers = 1;
  cmd_metrics_sweep(config);
  const std::string a = slurp(fs::path(config.out) / "metrics_sweep.csv");
  config.out = scratch("det2").string();
  config.workers = 4;
  cmd_metrics_sweep(config);
  EXPECT_EQ(a, slurp(fs::path(config.out) / "metrics_sweep.csv"));
}

TEST(Cli, ConfigParsing) {
  RunConfig config;
  apply_config_json(config,
                    R"({"model": "integrator", "x0": [2], "tf": 1.5, "wbar": 0.5,
                        "R_grid": [1, 2], "numeric": {"condition_limit": 1e10}})",
                    "inline");
  EXPECT_EQ(config.model, "integrator");
  EXPECT_EQ(config.x0, std::vector<double>{2.0});
  EXPECT_EQ(config.t_f, 1.5);
  EXPECT_EQ(config.numeric.condition_limit, 1e10);
  EXPECT_THROW(apply_config_json(config, R"({"tf": "soon"})", "inline"), ConfigError);
  EXPECT_THROW(apply_config_json(config, "[1, 2]", "inline"), ConfigError);
  RunConfig bad;
  bad.R_grid = {};
  EXPECT_THROW(validate(bad), ConfigError);
  bad = RunConfig{};
  bad.disturbances = {"gust"};
  EXPECT_THROW(validate(bad), ConfigError);
}

TEST(Cli, ModelReport) {
  RunConfig config;
  const auto doc = nlohmann::json::parse(cmd_model(config));
  EXPECT_EQ(doc.at("controllability_rank"), 3);
  EXPECT_EQ(doc.at("A")[0][2], 0.6176);
}
