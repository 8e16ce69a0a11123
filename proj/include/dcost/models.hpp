#pragma once

#include <string>
#include <vector>

#include "dcost/settings.hpp"
#include "dcost/system.hpp"

namespace dcost {

/// Model file contents: {"name", "n", "p", "A": [[...], ...], "B": [[...], ...]}
/// with optional "description" and "citation" strings.
struct ModelSpec {
  std::string name;
  Matrix A;
  Matrix B;
  std::string description;
  std::string citation;
};

/// Roll/pitch/yaw-rate subsystem of the linearized ADMIRE fighter jet:
/// n = 3 states (p, q, r in rad/s), p = 4 inputs (canard, left and right
/// elevons, rudder deflections in rad).
LtiSystem admire();
ModelSpec admire_spec();

/// Names accepted by builtin_model(): "admire", "integrator" (A = 0, B = 1).
std::vector<std::string> builtin_model_names();

/// Throws ConfigError for an unknown name.
ModelSpec builtin_model(const std::string& name);

/// Parses model JSON. `source` names the input in error messages.
/// Throws ParseError on malformed input and ValidationError if (A, B) is not
/// controllable.
ModelSpec parse_model(const std::string& text, const std::string& source = "<string>");

/// Reads and validates a model file.
LtiSystem load_model(const std::string& path, const NumericSettings& settings = {});

std::string model_to_json(const ModelSpec& spec);
void save_model(const ModelSpec& spec, const std::string& path);

/// Validates the spec as an LtiSystem.
LtiSystem to_system(const ModelSpec& spec, const NumericSettings& settings = {});

/// A builtin name or a path to a model file.
ModelSpec resolve_model(const std::string& name_or_path);

}  // namespace dcost
