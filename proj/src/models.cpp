#include "dcost/models.hpp"

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "dcost/errors.hpp"
#include "dcost/format.hpp"

namespace dcost {

using json = nlohmann::json;

ModelSpec admire_spec() {
  ModelSpec spec;
  spec.name = "admire";
  spec.A.resize(3, 3);
  // clang-format off
  spec.A << -0.9967,  0.0,     0.6176,
             0.0,    -0.5057,  0.0,
            -0.0939,  0.0,    -0.2127;
  spec.B.resize(3, 4);
  spec.B << 0.0,    -4.2423,  4.2423,  1.4871,
            1.6532, -1.2735, -1.2735,  0.0024,
            0.0,    -0.2805,  0.2805, -0.8823;
  // clang-format on
  spec.description =
      "ADMIRE fighter jet, roll/pitch/yaw-rate subsystem linearized about trim; "
      "inputs are canard, left elevon, right elevon and rudder deflections";
  spec.citation = "Linearized control-action subsystem of the ADMIRE aircraft model";
  return spec;
}

LtiSystem admire() { return to_system(admire_spec()); }

std::vector<std::string> builtin_model_names() { return {"admire", "integrator"}; }

ModelSpec builtin_model(const std::string& name) {
  if (name == "admire") return admire_spec();
  if (name == "integrator") {
    ModelSpec spec;
    spec.name = "integrator";
    spec.A = Matrix::Zero(1, 1);
    spec.B = Matrix::Ones(1, 1);
    spec.description = "scalar integrator x' = u + w";
    return spec;
  }
  throw ConfigError("unknown builtin model '" + name + "'");
}

LtiSystem to_system(const ModelSpec& spec, const NumericSettings& settings) {
  return LtiSystem(spec.A, spec.B, spec.name, settings);
}

namespace {

Matrix parse_matrix(const json& doc, const char* field, long rows, long cols,
                    const std::string& source) {
  if (!doc.contains(field)) {
    throw ParseError(source + ": missing field '" + field + "'", field);
  }
  const json& m = doc.at(field);
  if (!m.is_array()) {
    throw ParseError(source + ": field '" + field + "' must be an array of rows", field);
  }
  if (static_cast<long>(m.size()) != rows) {
    throw ParseError(source + ": field '" + field + "' has " + std::to_string(m.size()) +
                         " rows, expected " + std::to_string(rows),
                     field);
  }
  Matrix out(rows, cols);
  for (long i = 0; i < rows; ++i) {
    const json& row = m[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<long>(row.size()) != cols) {
      throw ParseError(source + ": field '" + field + "' row " + std::to_string(i) + " has " +
                           (row.is_array() ? std::to_string(row.size()) : std::string("no")) +
                           " entries, expected " + std::to_string(cols),
                       field, i);
    }
    for (long j = 0; j < cols; ++j) {
      const json& v = row[static_cast<std::size_t>(j)];
      if (!v.is_number()) {
        throw ParseError(source + ": field '" + field + "' row " + std::to_string(i) +
                             " entry " + std::to_string(j) + " is not a number",
                         field, i);
      }
      out(i, j) = v.get<double>();
    }
  }
  return out;
}

long parse_dimension(const json& doc, const char* field, const std::string& source) {
  if (!doc.contains(field) || !doc.at(field).is_number_integer() ||
      doc.at(field).get<long>() <= 0) {
    throw ParseError(source + ": field '" + field + "' must be a positive integer", field);
  }
  return doc.at(field).get<long>();
}

}  // namespace

ModelSpec parse_model(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + ": invalid JSON at byte " + std::to_string(e.byte) + ": " + e.what(),
                     "");
  }
  if (!doc.is_object()) throw ParseError(source + ": model must be a JSON object", "");

  ModelSpec spec;
  if (doc.contains("name")) {
    if (!doc.at("name").is_string()) throw ParseError(source + ": 'name' must be a string", "name");
    spec.name = doc.at("name").get<std::string>();
  }
  const long n = parse_dimension(doc, "n", source);
  const long p = parse_dimension(doc, "p", source);
  spec.A = parse_matrix(doc, "A", n, n, source);
  spec.B = parse_matrix(doc, "B", n, p, source);
  if (doc.contains("description") && doc.at("description").is_string()) {
    spec.description = doc.at("description").get<std::string>();
  }
  if (doc.contains("citation") && doc.at("citation").is_string()) {
    spec.citation = doc.at("citation").get<std::string>();
  }
  // Validate controllability (and finiteness) now so a bad file fails on load.
  (void)to_system(spec);
  return spec;
}

LtiSystem load_model(const std::string& path, const NumericSettings& settings) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file '" + path + "'", "");
  std::stringstream buf;
  buf << in.rdbuf();
  return to_system(parse_model(buf.str(), path), settings);
}

std::string model_to_json(const ModelSpec& spec) {
  auto rows = [](const Matrix& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
      out.push_back(row);
    }
    return out;
  };
  json doc;
  doc["name"] = spec.name;
  doc["n"] = spec.A.rows();
  doc["p"] = spec.B.cols();
  doc["A"] = rows(spec.A);
  doc["B"] = rows(spec.B);
  if (!spec.description.empty()) doc["description"] = spec.description;
  if (!spec.citation.empty()) doc["citation"] = spec.citation;
  return doc.dump(2) + "\n";
}

void save_model(const ModelSpec& spec, const std::string& path) {
  write_file_atomic(path, model_to_json(spec));
}

ModelSpec resolve_model(const std::string& name_or_path) {
  for (const auto& name : builtin_model_names()) {
    if (name == name_or_path) return builtin_model(name);
  }
  if (!std::filesystem::exists(name_or_path)) {
    throw ConfigError("model '" + name_or_path + "' is neither a builtin nor an existing file");
  }
  std::ifstream in(name_or_path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str(), name_or_path);
}

}  // namespace dcost
