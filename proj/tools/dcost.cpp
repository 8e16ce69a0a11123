#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "dcost/cli.hpp"
#include "dcost/errors.hpp"
#include "dcost/format.hpp"
#include "dcost/models.hpp"

using namespace dcost;
using namespace dcost::cli;

namespace {

struct Flags {
  std::string config_path;
  std::string save_path;
  RunConfig values;
};

void add_common(CLI::App* sub, Flags& f) {
  RunConfig& v = f.values;
  sub->add_option("--config", f.config_path, "JSON config file; flags override its keys");
  sub->add_option("--model", v.model, "builtin model name or path to a model JSON file");
  sub->add_option("--x0", v.x0, "initial state, e.g. --x0 5 -1 3")->expected(1, -1);
  sub->add_option("--tf", v.t_f, "final time in seconds");
  sub->add_option("--wbar", v.w_bar, "disturbance bound (infinity norm)");
  sub->add_option("--R-grid", v.R_grid, "initial-state radii")->expected(1, -1);
  sub->add_option("--tf-grid", v.tf_grid, "final times")->expected(1, -1);
  sub->add_option("--disturbances", v.disturbances, "nominal, constant, sinusoid, random")
      ->expected(1, -1);
  sub->add_option("--constant-sign", v.constant_sign, "sign pattern of the constant disturbance")
      ->expected(1, -1);
  sub->add_option("--frequencies", v.sinusoid_frequencies, "sinusoid frequencies in rad/s")
      ->expected(1, -1);
  sub->add_option("--steps", v.steps, "RK4 steps over [0, t_f]");
  sub->add_option("--random-cells", v.random_cells, "cells of random disturbances in sweeps");
  sub->add_option("--samples", v.samples, "sampled initial states per grid point");
  sub->add_option("--seed", v.seed, "base random seed");
  sub->add_option("--out", v.out, "output directory");
  sub->add_option("--workers", v.workers, "worker threads for sweeps");
}

// Config file first, then every flag that was given on the command line.
RunConfig resolve(const CLI::App* sub, const Flags& f) {
  RunConfig config;
  if (!f.config_path.empty()) apply_config_file(config, f.config_path);
  const RunConfig& v = f.values;
  auto given = [&](const char* name) { return sub->count(name) > 0; };
  if (given("--model")) config.model = v.model;
  if (given("--x0")) config.x0 = v.x0;
  if (given("--tf")) config.t_f = v.t_f;
  if (given("--wbar")) config.w_bar = v.w_bar;
  if (given("--R-grid")) config.R_grid = v.R_grid;
  if (given("--tf-grid")) config.tf_grid = v.tf_grid;
  if (given("--disturbances")) config.disturbances = v.disturbances;
  if (given("--constant-sign")) config.constant_sign = v.constant_sign;
  if (given("--frequencies")) config.sinusoid_frequencies = v.sinusoid_frequencies;
  if (given("--steps")) config.steps = v.steps;
  if (given("--random-cells")) config.random_cells = v.random_cells;
  if (given("--samples")) config.samples = v.samples;
  if (given("--seed")) config.seed = v.seed;
  if (given("--out")) config.out = v.out;
  if (given("--workers")) config.workers = v.workers;
  return config;
}

int run(CLI::App& app, CLI::App* stabilize, CLI::App* accuracy, CLI::App* sweep, CLI::App* energy,
        CLI::App* model, const Flags& f) {
  if (stabilize->parsed()) {
    const StabilizeResult r = cmd_stabilize(resolve(stabilize, f));
    std::cout << "E_N = " << format_double(r.report.E_N)
              << "  E_D_bound = " << format_double(r.report.E_D_bound) << '\n';
    for (const auto& run : r.runs) {
      std::cout << run.name << ": residual " << format_double(run.relative_residual)
                << ", energy " << format_double(run.energy_trajectory) << " (closed form "
                << format_double(run.energy_closed_form) << ") -> " << run.csv_path << '\n';
    }
    return kOk;
  }
  if (accuracy->parsed()) {
    const RunConfig config = resolve(accuracy, f);
    std::cout << bound_accuracy_csv(cmd_bound_accuracy(config));
    return kOk;
  }
  if (sweep->parsed()) {
    const RunConfig config = resolve(sweep, f);
    const SweepResult r = cmd_metrics_sweep(config);
    std::size_t additive = 0;
    std::size_t multiplicative = 0;
    for (const auto& row : r.rows) {
      additive += row.additive_violations;
      multiplicative += row.multiplicative_violations;
    }
    std::cout << r.rows.size() << " grid points, disturbance family of " << r.family_size
              << "; additive violations " << additive << ", multiplicative violations "
              << multiplicative << " -> "
              << (std::filesystem::path(config.out) / "metrics_sweep.csv").string() << '\n';
    return kOk;
  }
  if (energy->parsed()) {
    std::cout << cmd_energy(resolve(energy, f));
    return kOk;
  }
  if (model->parsed()) {
    const RunConfig config = resolve(model, f);
    std::cout << cmd_model(config);
    if (!f.save_path.empty()) save_model(resolve_model(config.model), f.save_path);
    return kOk;
  }
  std::cerr << app.help();
  return kConfigError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-energy finite-time stabilization and the cost of disturbance"};
  app.require_subcommand(1);
  Flags f;
  auto* stabilize = app.add_subcommand("stabilize", "simulate nominal and disturbed closed loops");
  auto* accuracy = app.add_subcommand("bound-accuracy", "||u_D||^2 / E_D_bound across t_f");
  auto* sweep = app.add_subcommand("metrics-sweep", "metric bounds and sampled evidence over (R, t_f)");
  auto* energy = app.add_subcommand("energy", "one-shot energy and metric report");
  auto* model = app.add_subcommand("model", "inspect and validate a model");
  for (auto* sub : {stabilize, accuracy, sweep, energy, model}) add_common(sub, f);
  model->add_option("--save", f.save_path, "write the model as JSON to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    return run(app, stabilize, accuracy, sweep, energy, model, f);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kValidationError;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DimensionError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}
