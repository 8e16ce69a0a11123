#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcost/disturbance.hpp"
#include "dcost/energy.hpp"
#include "dcost/linalg.hpp"
#include "dcost/metrics.hpp"
#include "dcost/settings.hpp"

namespace dcost::cli {

/// Everything a CLI run needs. Defaults are the ADMIRE setup.
struct RunConfig {
  std::string model = "admire";
  std::vector<double> x0 = {5.0, -1.0, 3.0};
  double t_f = 5.0;
  double w_bar = 1.0;
  std::vector<double> R_grid = {0.1, 0.31622776601683794, 1.0, 3.1622776601683795, 10.0,
                                31.622776601683793, 100.0, 316.22776601683796, 1000.0};
  std::vector<double> tf_grid = {0.1, 0.25, 0.5, 1.0, 2.0, 5.0};
  std::vector<std::string> disturbances = {"nominal", "constant", "sinusoid", "random"};
  std::vector<double> constant_sign = {1.0, -1.0, 1.0};
  std::vector<double> sinusoid_frequencies = {20.0, 27.0, 35.0};
  std::size_t steps = 5000;
  std::size_t random_cells = 1000;  // cells of the random disturbance outside `stabilize`
  std::size_t samples = 500;
  std::uint64_t seed = 42;
  std::string out = "out";
  unsigned workers = 1;
  NumericSettings numeric;
};

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kParseError = 3,
  kNumericalError = 4,
  kValidationError = 5,
};

/// Applies the keys present in a JSON config document on top of `config`.
void apply_config_json(RunConfig& config, const std::string& text, const std::string& source);
void apply_config_file(RunConfig& config, const std::string& path);

/// Throws ConfigError for empty or non-positive grids, t_f <= 0, w_bar < 0, etc.
void validate(const RunConfig& config);

/// Disturbance spec for a named class ("nominal", "constant", "sinusoid", "random").
DisturbanceSpec disturbance_spec(const RunConfig& config, const std::string& name,
                                 std::size_t cells);

// --- stabilize ---------------------------------------------------------------

struct StabilizeRun {
  std::string name;
  double terminal_norm = 0.0;
  double relative_residual = 0.0;  // ||x(t_f)||_2 / ||x0||_2
  double energy_trajectory = 0.0;  // running energy at t_f
  double energy_closed_form = 0.0;
  std::string csv_path;
};

struct StabilizeResult {
  EnergyReport report;
  std::vector<StabilizeRun> runs;
};

/// Simulates the nominal loop and each disturbed loop; writes traj_<name>.csv
/// and summary.json to config.out.
StabilizeResult cmd_stabilize(const RunConfig& config);

// --- bound-accuracy ----------------------------------------------------------

struct BoundAccuracyRow {
  double t_f = 0.0;
  double E_N = 0.0;
  double E_D_bound = 0.0;
  std::vector<double> ratios;  // ||u_D||^2 / E_D_bound, one per class
};

struct BoundAccuracyResult {
  std::vector<std::string> classes;
  std::vector<BoundAccuracyRow> rows;
};

/// Writes bound_accuracy.csv and summary.json.
BoundAccuracyResult cmd_bound_accuracy(const RunConfig& config);

// --- metrics-sweep -----------------------------------------------------------

struct SweepRow {
  MetricReport metrics;
  double E_N = 0.0;        // at x0 = R * config.x0 / ||config.x0||
  double E_D_bound = 0.0;  // same x0
  double diff_min = 0.0;   // E_D_bound - E_N over x0 sampled in the ball ||x0|| <= R
  double diff_max = 0.0;
  double bound_ratio_min = 0.0;  // E_N / E_D_bound over x0 sampled on ||x0|| = R
  double ratio_min = 0.0;  // E_N / max_w ||u_D||^2 over x0 sampled on ||x0|| = R
  double ratio_max = 0.0;
  double signal_ratio_min = 0.0;  // E_N / ||u_D||^2 over every sampled (x0, w) pair
  std::size_t additive_violations = 0;
  std::size_t multiplicative_violations = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // t_f-major, R-minor
  std::size_t family_size = 0;
};

/// Writes metrics_sweep.csv and summary.json.
SweepResult cmd_metrics_sweep(const RunConfig& config);

/// Negation-closed family of admissible disturbances used as evidence in the
/// sweep: every constant sign pattern, four sinusoid variants and four
/// piecewise-uniform draws, each with its negation.
std::vector<DisturbanceSignal> disturbance_family(const RunConfig& config, Eigen::Index dim,
                                                  double t_f, std::uint64_t seed);

// --- energy / model ----------------------------------------------------------

/// One-shot report for (x0, t_f, w_bar) as JSON; also written to out/summary.json.
std::string cmd_energy(const RunConfig& config);

/// Model description and controllability rank as JSON.
std::string cmd_model(const RunConfig& config);

std::string sweep_csv(const SweepResult& result);
std::string bound_accuracy_csv(const BoundAccuracyResult& result);

}  // namespace dcost::cli
