#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <json.hpp>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "dcost/cli.hpp"
#include "dcost/errors.hpp"
#include "dcost/format.hpp"
#include "dcost/gramian.hpp"
#include "dcost/models.hpp"
#include "dcost/simulate.hpp"
#include "dcost/synthesis.hpp"

namespace dcost::cli {

using json = nlohmann::json;

namespace {

struct Setup {
  ModelSpec spec;
  LtiSystem sys;
  Vector x0;
};

Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Setup prepare(const RunConfig& config) {
  validate(config);
  ModelSpec spec = resolve_model(config.model);
  LtiSystem sys = to_system(spec, config.numeric);
  const auto n = static_cast<std::size_t>(sys.states());
  if (config.x0.size() != n) {
    throw ConfigError("x0 has " + std::to_string(config.x0.size()) + " entries, model '" +
                      spec.name + "' has " + std::to_string(n) + " states");
  }
  if (config.constant_sign.size() != n) {
    throw ConfigError("constant_sign has " + std::to_string(config.constant_sign.size()) +
                      " entries, expected " + std::to_string(n));
  }
  if (config.sinusoid_frequencies.size() != n) {
    throw ConfigError("sinusoid_frequencies has " +
                      std::to_string(config.sinusoid_frequencies.size()) + " entries, expected " +
                      std::to_string(n));
  }
  std::filesystem::create_directories(config.out);
  return Setup{std::move(spec), std::move(sys), to_vector(config.x0)};
}

std::string out_path(const RunConfig& config, const std::string& file) {
  return (std::filesystem::path(config.out) / file).string();
}

json report_json(const EnergyReport& r) {
  return json{{"E_N", r.E_N},
              {"E_D_bound", r.E_D_bound},
              {"q_bar", r.q_bar},
              {"witness_q", std::vector<double>(r.witness_q.data(),
                                                r.witness_q.data() + r.witness_q.size())},
              {"c_term", r.c_term},
              {"cross_term", r.cross_term}};
}

json config_json(const RunConfig& c) {
  return json{{"model", c.model},         {"x0", c.x0},
              {"tf", c.t_f},              {"wbar", c.w_bar},
              {"R_grid", c.R_grid},       {"tf_grid", c.tf_grid},
              {"disturbances", c.disturbances}, {"constant_sign", c.constant_sign},
              {"sinusoid_frequencies", c.sinusoid_frequencies},
              {"steps", c.steps},         {"random_cells", c.random_cells},
              {"samples", c.samples},     {"seed", c.seed}};
}

// Runs body(i) for i in [0, count) on up to `workers` threads; rethrows the
// first failure.
template <typename F>
void parallel_for(std::size_t count, unsigned workers, F body) {
  const unsigned threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

Vector sample_sphere(SplitMix64& rng, Eigen::Index n, double radius) {
  Vector d(n);
  double len = 0.0;
  while (len == 0.0) {
    for (Eigen::Index i = 0; i < n; ++i) d(i) = rng.normal();
    len = d.norm();
  }
  return d * (radius / len);
}

Vector sample_ball(SplitMix64& rng, Eigen::Index n, double radius) {
  const double scale = std::pow(rng.uniform(), 1.0 / static_cast<double>(n));
  return sample_sphere(rng, n, radius * scale);
}

}  // namespace

StabilizeResult cmd_stabilize(const RunConfig& config) {
  const Setup setup = prepare(config);
  const LtiSystem& sys = setup.sys;
  const StabilizationTask task(setup.x0, config.t_f, config.w_bar);
  const GramianBundle bundle = build_bundle(sys, config.t_f, config.numeric);
  const StageCache cache(sys, config.t_f, config.steps);

  StabilizeResult result;
  result.report = disturbed_energy_bound(sys, task, bundle);

  json runs = json::array();
  for (std::size_t i = 0; i < config.disturbances.size(); ++i) {
    const std::string& name = config.disturbances[i];
    // Random cells match the integration grid so the simulator and R(w, t_f)
    // see the same signal.
    const DisturbanceSignal w =
        make_disturbance(disturbance_spec(config, name, config.steps), config.w_bar,
                         sys.states(), derive_seed(config.seed, i), config.t_f);
    const bool nominal = w.kind() == DisturbanceKind::Zero;
    const Vector response = disturbance_response(sys, w, config.t_f, config.numeric);
    const ControlSignal u = nominal ? nominal_control(sys, task, bundle)
                                    : disturbed_control(sys, task, bundle, response);
    const Trajectory traj = simulate_closed_loop(sys, task, u, w, config.steps, &cache);

    StabilizeRun run;
    run.name = name;
    run.terminal_norm = traj.state_norms.back();
    run.relative_residual = run.terminal_norm / setup.x0.norm();
    run.energy_trajectory = traj.control_energy.back();
    run.energy_closed_form = nominal ? nominal_energy(sys, task, bundle)
                                     : disturbed_signal_energy(sys, task, bundle, response);
    run.csv_path = out_path(config, "traj_" + name + ".csv");

    std::ostringstream csv;
    write_trajectory_csv(csv, traj);
    write_file_atomic(run.csv_path, csv.str());

    runs.push_back(json{{"name", run.name},
                        {"file", "traj_" + name + ".csv"},
                        {"terminal_norm", run.terminal_norm},
                        {"relative_residual", run.relative_residual},
                        {"energy_trajectory", run.energy_trajectory},
                        {"energy_closed_form", run.energy_closed_form}});
    result.runs.push_back(std::move(run));
  }

  const json summary{{"command", "stabilize"},
                     {"config", config_json(config)},
                     {"energy", report_json(result.report)},
                     {"runs", runs}};
  write_file_atomic(out_path(config, "summary.json"), summary.dump(2) + "\n");
  return result;
}

std::string bound_accuracy_csv(const BoundAccuracyResult& result) {
  std::ostringstream out;
  out << "t_f,E_N,E_D_bound";
  for (const auto& c : result.classes) out << ",ratio_" << c;
  out << '\n';
  for (const auto& row : result.rows) {
    out << format_double(row.t_f) << ',' << format_double(row.E_N) << ','
        << format_double(row.E_D_bound);
    for (double r : row.ratios) out << ',' << format_double(r);
    out << '\n';
  }
  return out.str();
}

BoundAccuracyResult cmd_bound_accuracy(const RunConfig& config) {
  const Setup setup = prepare(config);
  const LtiSystem& sys = setup.sys;

  BoundAccuracyResult result;
  for (const auto& name : config.disturbances) {
    if (disturbance_kind_from_string(name) != DisturbanceKind::Zero) result.classes.push_back(name);
  }
  if (result.classes.empty()) {
    throw ConfigError("bound-accuracy needs at least one non-nominal disturbance class");
  }

  result.rows.resize(config.tf_grid.size());
  parallel_for(config.tf_grid.size(), config.workers, [&](std::size_t k) {
    const double t_f = config.tf_grid[k];
    const StabilizationTask task(setup.x0, t_f, config.w_bar);
    const GramianBundle bundle = build_bundle(sys, t_f, config.numeric);
    const EnergyReport report = disturbed_energy_bound(sys, task, bundle);
    BoundAccuracyRow row;
    row.t_f = t_f;
    row.E_N = report.E_N;
    row.E_D_bound = report.E_D_bound;
    for (std::size_t c = 0; c < result.classes.size(); ++c) {
      const DisturbanceSignal w =
          make_disturbance(disturbance_spec(config, result.classes[c], config.random_cells),
                           config.w_bar, sys.states(), derive_seed(config.seed, c), t_f);
      const double energy = disturbed_signal_energy(sys, task, bundle, w, config.numeric);
      row.ratios.push_back(energy / report.E_D_bound);
    }
    result.rows[k] = std::move(row);
  });

  write_file_atomic(out_path(config, "bound_accuracy.csv"), bound_accuracy_csv(result));
  json rows = json::array();
  for (const auto& row : result.rows) {
    json ratios = json::object();
    for (std::size_t c = 0; c < result.classes.size(); ++c) ratios[result.classes[c]] = row.ratios[c];
    rows.push_back(json{{"t_f", row.t_f}, {"E_N", row.E_N}, {"E_D_bound", row.E_D_bound},
                        {"ratios", ratios}});
  }
  const json summary{{"command", "bound-accuracy"}, {"config", config_json(config)}, {"rows", rows}};
  write_file_atomic(out_path(config, "summary.json"), summary.dump(2) + "\n");
  return result;
}

std::vector<DisturbanceSignal> disturbance_family(const RunConfig& config, Eigen::Index dim,
                                                  double t_f, std::uint64_t seed) {
  std::vector<DisturbanceSignal> family;
  const double w_bar = config.w_bar;

  // Constant sign patterns; s and -s both appear.
  if (dim <= 10) {
    const std::uint64_t patterns = std::uint64_t{1} << dim;
    for (std::uint64_t mask = 0; mask < patterns; ++mask) {
      Vector s(dim);
      for (Eigen::Index i = 0; i < dim; ++i) s(i) = (mask >> i) & 1U ? 1.0 : -1.0;
      family.push_back(DisturbanceSignal::constant_sign(s, w_bar));
    }
  } else {
    SplitMix64 rng(derive_seed(seed, 7));
    for (int k = 0; k < 32; ++k) {
      Vector s(dim);
      for (Eigen::Index i = 0; i < dim; ++i) s(i) = rng.uniform() < 0.5 ? -1.0 : 1.0;
      family.push_back(DisturbanceSignal::constant_sign(s, w_bar));
      family.push_back(DisturbanceSignal::constant_sign(-s, w_bar));
    }
  }

  const Vector base = to_vector(config.sinusoid_frequencies);
  const Vector amplitude = Vector::Constant(dim, w_bar);
  const Vector zero_phase = Vector::Zero(dim);
  const Vector quarter_phase = Vector::Constant(dim, 0.5 * std::numbers::pi);
  const std::vector<std::pair<Vector, Vector>> sinusoids = {
      {base, zero_phase}, {base, quarter_phase}, {2.0 * base, zero_phase}, {0.5 * base, zero_phase}};
  for (const auto& [freq, phase] : sinusoids) {
    const DisturbanceSignal w = DisturbanceSignal::sinusoid(amplitude, freq, phase, w_bar);
    family.push_back(w);
    family.push_back(w.negated());
  }

  for (std::uint64_t k = 0; k < 4; ++k) {
    const DisturbanceSignal w = DisturbanceSignal::piecewise_uniform(
        derive_seed(seed, 100 + k), config.random_cells, t_f, w_bar, dim);
    family.push_back(w);
    family.push_back(w.negated());
  }
  return family;
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "R,t_f,H,r_A_bound,r_M_bound,E_N,E_D_bound,diff_min,diff_max,bound_ratio_min,"
         "ratio_min,ratio_max,signal_ratio_min,additive_violations,multiplicative_violations\n";
  for (const auto& row : result.rows) {
    const MetricReport& m = row.metrics;
    out << format_double(m.R) << ',' << format_double(m.t_f) << ',' << format_double(m.hardness)
        << ',' << format_double(m.r_A_bound) << ',' << format_double(m.r_M_bound) << ','
        << format_double(row.E_N) << ',' << format_double(row.E_D_bound) << ','
        << format_double(row.diff_min) << ',' << format_double(row.diff_max) << ','
        << format_double(row.bound_ratio_min) << ',' << format_double(row.ratio_min) << ','
        << format_double(row.ratio_max) << ',' << format_double(row.signal_ratio_min) << ','
        << row.additive_violations << ',' << row.multiplicative_violations << '\n';
  }
  return out.str();
}

SweepResult cmd_metrics_sweep(const RunConfig& config) {
  const Setup setup = prepare(config);
  const LtiSystem& sys = setup.sys;
  const Eigen::Index n = sys.states();
  const Vector direction = setup.x0.normalized();

  // Per-horizon ingredients shared by every R at that horizon.
  struct Horizon {
    GramianBundle bundle;
    MetricCoefficients coefficients;
    std::vector<Vector> responses;
  };
  std::vector<Horizon> horizons(config.tf_grid.size());
  std::size_t family_size = 0;
  parallel_for(config.tf_grid.size(), config.workers, [&](std::size_t k) {
    const double t_f = config.tf_grid[k];
    Horizon h;
    h.bundle = build_bundle(sys, t_f, config.numeric);
    h.coefficients = metric_coefficients(sys, h.bundle, config.w_bar, config.numeric);
    for (const auto& w : disturbance_family(config, n, t_f, derive_seed(config.seed, k))) {
      h.responses.push_back(disturbance_response(sys, w, t_f, config.numeric));
    }
    horizons[k] = std::move(h);
  });
  family_size = horizons.front().responses.size();

  const std::size_t per_horizon = config.R_grid.size();
  SweepResult result;
  result.family_size = family_size;
  result.rows.resize(config.tf_grid.size() * per_horizon);

  parallel_for(result.rows.size(), config.workers, [&](std::size_t idx) {
    const std::size_t k = idx / per_horizon;
    const double R = config.R_grid[idx % per_horizon];
    const double t_f = config.tf_grid[k];
    const Horizon& h = horizons[k];
    const GramianBundle& bundle = h.bundle;

    SweepRow row;
    row.metrics = metric_report(sys, bundle, config.w_bar, R, config.numeric);
    {
      const StabilizationTask task(R * direction, t_f, config.w_bar);
      const EnergyReport report = disturbed_energy_bound(sys, task, bundle);
      row.E_N = report.E_N;
      row.E_D_bound = report.E_D_bound;
    }

    SplitMix64 rng(derive_seed(config.seed, 1'000'000 + idx));
    row.diff_min = std::numeric_limits<double>::infinity();
    row.diff_max = -std::numeric_limits<double>::infinity();
    row.bound_ratio_min = std::numeric_limits<double>::infinity();
    row.ratio_min = std::numeric_limits<double>::infinity();
    row.ratio_max = -std::numeric_limits<double>::infinity();
    row.signal_ratio_min = std::numeric_limits<double>::infinity();

    for (std::size_t s = 0; s < config.samples; ++s) {
      // Additive evidence: x0 uniform in the ball.
      {
        const StabilizationTask task(sample_ball(rng, n, R), t_f, config.w_bar);
        const EnergyReport report = disturbed_energy_bound(sys, task, bundle);
        const double diff = report.E_D_bound - report.E_N;
        row.diff_min = std::min(row.diff_min, diff);
        row.diff_max = std::max(row.diff_max, diff);
        if (diff > row.metrics.r_A_bound) ++row.additive_violations;
      }
      // Multiplicative evidence: x0 uniform on the sphere, worst case over the family.
      {
        const StabilizationTask task(sample_sphere(rng, n, R), t_f, config.w_bar);
        const EnergyReport report = disturbed_energy_bound(sys, task, bundle);
        const Vector free_response = bundle.transition * task.x0();
        double worst = 0.0;
        for (const Vector& response : h.responses) {
          const double energy = weighted_energy(bundle, free_response + response);
          worst = std::max(worst, energy);
          const double ratio = report.E_N / energy;
          row.signal_ratio_min = std::min(row.signal_ratio_min, ratio);
          if (ratio < row.metrics.r_M_bound) ++row.multiplicative_violations;
        }
        const double bound_ratio = report.E_N / report.E_D_bound;
        row.bound_ratio_min = std::min(row.bound_ratio_min, bound_ratio);
        if (bound_ratio < row.metrics.r_M_bound) ++row.multiplicative_violations;
        const double ratio = report.E_N / worst;
        row.ratio_min = std::min(row.ratio_min, ratio);
        row.ratio_max = std::max(row.ratio_max, ratio);
      }
    }
    result.rows[idx] = row;
  });

  write_file_atomic(out_path(config, "metrics_sweep.csv"), sweep_csv(result));

  std::size_t additive = 0;
  std::size_t multiplicative = 0;
  for (const auto& row : result.rows) {
    additive += row.additive_violations;
    multiplicative += row.multiplicative_violations;
  }
  json coefficients = json::array();
  for (std::size_t k = 0; k < horizons.size(); ++k) {
    const auto& c = horizons[k].coefficients;
    coefficients.push_back(json{{"t_f", config.tf_grid[k]},
                                {"gamma", c.gamma},
                                {"c", c.c_term},
                                {"l_min", c.l_min},
                                {"q_bar", q_bar(horizons[k].bundle, config.w_bar)}});
  }
  const json summary{{"command", "metrics-sweep"},
                     {"config", config_json(config)},
                     {"family_size", family_size},
                     {"coefficients", coefficients},
                     {"additive_violations", additive},
                     {"multiplicative_violations", multiplicative}};
  write_file_atomic(out_path(config, "summary.json"), summary.dump(2) + "\n");
  return result;
}

std::string cmd_energy(const RunConfig& config) {
  const Setup setup = prepare(config);
  const StabilizationTask task(setup.x0, config.t_f, config.w_bar);
  const GramianBundle bundle = build_bundle(setup.sys, config.t_f, config.numeric);
  const EnergyReport report = disturbed_energy_bound(setup.sys, task, bundle);
  const double R = setup.x0.norm();
  const MetricReport metrics = metric_report(setup.sys, bundle, config.w_bar, R, config.numeric);

  const json doc{{"command", "energy"},
                 {"model", setup.spec.name},
                 {"x0", config.x0},
                 {"tf", config.t_f},
                 {"wbar", config.w_bar},
                 {"energy", report_json(report)},
                 {"gramian",
                  json{{"lambdas_W_inv",
                        std::vector<double>(bundle.spec.lambdas.data(),
                                            bundle.spec.lambdas.data() + bundle.spec.lambdas.size())},
                       {"v_bar_unit", bundle.v_bar_unit}}},
                 {"metrics", json{{"R", metrics.R},
                                  {"H", metrics.hardness},
                                  {"r_A_bound", metrics.r_A_bound},
                                  {"r_M_bound", metrics.r_M_bound},
                                  {"gamma", metrics.gamma},
                                  {"c", metrics.c_term},
                                  {"l_min", metrics.l_min}}}};
  const std::string text = doc.dump(2) + "\n";
  write_file_atomic(out_path(config, "summary.json"), text);
  return text;
}

std::string cmd_model(const RunConfig& config) {
  const ModelSpec spec = resolve_model(config.model);
  const long rank = controllability_rank(spec.A, spec.B, config.numeric.controllability_tolerance);
  json doc = json::parse(model_to_json(spec));
  doc["controllability_rank"] = rank;
  doc["controllable"] = rank == spec.A.rows();
  return doc.dump(2) + "\n";
}

}  // namespace dcost::cli
