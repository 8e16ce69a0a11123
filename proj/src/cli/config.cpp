#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "dcost/cli.hpp"
#include "dcost/errors.hpp"

namespace dcost::cli {

using json = nlohmann::json;

namespace {

template <typename T>
void read(const json& doc, const char* key, T& target, const std::string& source) {
  if (!doc.contains(key)) return;
  try {
    target = doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(source + ": bad value for '" + key + "': " + e.what());
  }
}

void read_numeric(const json& doc, NumericSettings& s, const std::string& source) {
  if (!doc.contains("numeric")) return;
  const json& n = doc.at("numeric");
  if (!n.is_object()) throw ConfigError(source + ": 'numeric' must be an object");
  read(n, "jacobi_tolerance", s.jacobi_tolerance, source);
  read(n, "jacobi_max_sweeps", s.jacobi_max_sweeps, source);
  read(n, "symmetry_tolerance", s.symmetry_tolerance, source);
  read(n, "condition_limit", s.condition_limit, source);
  read(n, "simpson_max_depth", s.simpson_max_depth, source);
  read(n, "norm_integral_tolerance", s.norm_integral_tolerance, source);
  read(n, "controllability_tolerance", s.controllability_tolerance, source);
  read(n, "response_tolerance", s.response_tolerance, source);
  read(n, "response_min_panels", s.response_min_panels, source);
  read(n, "response_max_panels", s.response_max_panels, source);
}

void require_positive_grid(const std::vector<double>& grid, const char* what) {
  if (grid.empty()) throw ConfigError(std::string(what) + " must not be empty");
  for (double v : grid) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(std::string(what) + " entries must be positive, got " + std::to_string(v));
    }
  }
}

}  // namespace

void apply_config_json(RunConfig& config, const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ": invalid JSON: " + e.what());
  }
  if (!doc.is_object()) throw ConfigError(source + ": config must be a JSON object");
  read(doc, "model", config.model, source);
  read(doc, "x0", config.x0, source);
  read(doc, "tf", config.t_f, source);
  read(doc, "wbar", config.w_bar, source);
  read(doc, "R_grid", config.R_grid, source);
  read(doc, "tf_grid", config.tf_grid, source);
  read(doc, "disturbances", config.disturbances, source);
  read(doc, "constant_sign", config.constant_sign, source);
  read(doc, "sinusoid_frequencies", config.sinusoid_frequencies, source);
  read(doc, "steps", config.steps, source);
  read(doc, "random_cells", config.random_cells, source);
  read(doc, "samples", config.samples, source);
  read(doc, "seed", config.seed, source);
  read(doc, "out", config.out, source);
  read(doc, "workers", config.workers, source);
  read_numeric(doc, config.numeric, source);
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  apply_config_json(config, buf.str(), path);
}

void validate(const RunConfig& config) {
  if (!(config.t_f > 0.0) || !std::isfinite(config.t_f)) {
    throw ConfigError("t_f must be positive, got " + std::to_string(config.t_f));
  }
  if (!(config.w_bar >= 0.0) || !std::isfinite(config.w_bar)) {
    throw ConfigError("w_bar must be nonnegative, got " + std::to_string(config.w_bar));
  }
  require_positive_grid(config.R_grid, "R grid");
  require_positive_grid(config.tf_grid, "t_f grid");
  if (config.x0.empty()) throw ConfigError("x0 must not be empty");
  bool nonzero = false;
  for (double v : config.x0) {
    if (!std::isfinite(v)) throw ConfigError("x0 entries must be finite");
    nonzero = nonzero || v != 0.0;
  }
  if (!nonzero) throw ConfigError("x0 must be nonzero");
  if (config.steps < 100) throw ConfigError("steps must be at least 100");
  if (config.random_cells == 0) throw ConfigError("random_cells must be positive");
  if (config.samples == 0) throw ConfigError("samples must be positive");
  if (config.workers == 0) throw ConfigError("workers must be positive");
  if (config.disturbances.empty()) throw ConfigError("disturbance list must not be empty");
  for (const auto& name : config.disturbances) {
    (void)disturbance_kind_from_string(name);
  }
  for (double s : config.constant_sign) {
    if (s != -1.0 && s != 0.0 && s != 1.0) {
      throw ConfigError("constant_sign entries must be -1, 0 or +1");
    }
  }
  if (config.out.empty()) throw ConfigError("output directory must not be empty");
}

DisturbanceSpec disturbance_spec(const RunConfig& config, const std::string& name,
                                 std::size_t cells) {
  DisturbanceSpec spec;
  spec.kind = disturbance_kind_from_string(name);
  spec.label = name;
  spec.sign = Eigen::Map<const Vector>(config.constant_sign.data(),
                                       static_cast<Eigen::Index>(config.constant_sign.size()));
  spec.frequency = Eigen::Map<const Vector>(
      config.sinusoid_frequencies.data(),
      static_cast<Eigen::Index>(config.sinusoid_frequencies.size()));
  spec.cells = cells;
  return spec;
}

}  // namespace dcost::cli
