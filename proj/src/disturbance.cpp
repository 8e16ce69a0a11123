#include "dcost/disturbance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dcost/errors.hpp"

namespace dcost {

double SplitMix64::normal() {
  // 1 - u keeps the logarithm argument in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  SplitMix64 mix(base ^ (0xd1b54a32d192ed03ULL * (stream + 1)));
  return mix.next();
}

namespace {

void check_bound(double w_bar) {
  if (!(w_bar >= 0.0) || !std::isfinite(w_bar)) {
    throw DomainError("disturbance: w_bar must be finite and nonnegative");
  }
}

// Cell index containing t, snapping to boundaries within 1e-9 cells.
Eigen::Index cell_index(double t, double width, Eigen::Index cells, bool from_left) {
  const double x = t / width;
  const double nearest = std::round(x);
  Eigen::Index idx;
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, nearest)) {
    idx = static_cast<Eigen::Index>(nearest) - (from_left ? 1 : 0);
  } else {
    idx = static_cast<Eigen::Index>(std::floor(x));
  }
  if (idx < 0) idx = 0;
  if (idx >= cells) idx = cells - 1;
  return idx;
}

}  // namespace

DisturbanceSignal::DisturbanceSignal(Data data, double w_bar, Eigen::Index dim, std::string label)
    : data_(std::move(data)), w_bar_(w_bar), dim_(dim), label_(std::move(label)) {}

DisturbanceSignal DisturbanceSignal::zero(Eigen::Index dim) {
  return DisturbanceSignal(Zero{}, 0.0, dim, "zero");
}

DisturbanceSignal DisturbanceSignal::constant_sign(const Vector& sign, double w_bar) {
  check_bound(w_bar);
  for (Eigen::Index i = 0; i < sign.size(); ++i) {
    const double s = sign(i);
    if (s != -1.0 && s != 0.0 && s != 1.0) {
      throw DomainError("constant_sign: sign entries must be -1, 0 or +1");
    }
  }
  return DisturbanceSignal(Constant{w_bar * sign}, w_bar, sign.size(), "constant");
}

DisturbanceSignal DisturbanceSignal::sinusoid(const Vector& amplitude, const Vector& frequency,
                                              const Vector& phase, double w_bar) {
  check_bound(w_bar);
  if (amplitude.size() != frequency.size() || amplitude.size() != phase.size()) {
    throw DimensionError("sinusoid: amplitude, frequency and phase lengths differ");
  }
  require_finite(amplitude, "sinusoid amplitude");
  require_finite(frequency, "sinusoid frequency");
  require_finite(phase, "sinusoid phase");
  for (Eigen::Index i = 0; i < amplitude.size(); ++i) {
    if (std::abs(amplitude(i)) > w_bar) {
      throw DomainError("sinusoid: amplitude " + std::to_string(amplitude(i)) +
                        " on channel " + std::to_string(i) + " exceeds w_bar " +
                        std::to_string(w_bar));
    }
  }
  return DisturbanceSignal(Sinusoid{amplitude, frequency, phase}, w_bar, amplitude.size(),
                           "sinusoid");
}

DisturbanceSignal DisturbanceSignal::piecewise_uniform(std::uint64_t seed, std::size_t cells,
                                                       double horizon, double w_bar,
                                                       Eigen::Index dim) {
  check_bound(w_bar);
  if (cells == 0) throw DomainError("piecewise_uniform: need at least one cell");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw DomainError("piecewise_uniform: horizon must be positive");
  }
  SplitMix64 rng(seed);
  PiecewiseUniform data{horizon / static_cast<double>(cells),
                        Matrix(static_cast<Eigen::Index>(cells), dim)};
  for (Eigen::Index k = 0; k < data.values.rows(); ++k) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      data.values(k, i) = rng.uniform(-w_bar, w_bar);
    }
  }
  return DisturbanceSignal(std::move(data), w_bar, dim, "random");
}

Vector DisturbanceSignal::operator()(double t) const { return evaluate(t, false); }

Vector DisturbanceSignal::left_limit(double t) const { return evaluate(t, true); }

Vector DisturbanceSignal::evaluate(double t, bool from_left) const {
  if (!(t >= 0.0) || t > horizon() * (1.0 + 1e-12)) {
    throw DomainError("disturbance '" + label_ + "' evaluated at t = " + std::to_string(t) +
                      " outside [0, " + std::to_string(horizon()) + "]");
  }
  struct Visitor {
    double t;
    bool from_left;
    Eigen::Index dim;
    Vector operator()(const Zero&) const { return Vector::Zero(dim); }
    Vector operator()(const Constant& c) const { return c.value; }
    Vector operator()(const Sinusoid& s) const {
      return s.amplitude.cwiseProduct((s.frequency * t + s.phase).array().sin().matrix());
    }
    Vector operator()(const PiecewiseUniform& p) const {
      const Eigen::Index k = cell_index(t, p.cell_width, p.values.rows(), from_left);
      return p.values.row(k).transpose();
    }
  };
  return std::visit(Visitor{t, from_left, dim_}, data_);
}

DisturbanceKind DisturbanceSignal::kind() const {
  switch (data_.index()) {
    case 0:
      return DisturbanceKind::Zero;
    case 1:
      return DisturbanceKind::ConstantSign;
    case 2:
      return DisturbanceKind::Sinusoid;
    default:
      return DisturbanceKind::PiecewiseUniform;
  }
}

double DisturbanceSignal::horizon() const {
  if (const auto* p = std::get_if<PiecewiseUniform>(&data_)) {
    return p->cell_width * static_cast<double>(p->values.rows());
  }
  return std::numeric_limits<double>::infinity();
}

bool DisturbanceSignal::piecewise_constant() const {
  return !std::holds_alternative<Sinusoid>(data_);
}

DisturbanceSignal DisturbanceSignal::negated() const {
  struct Visitor {
    Data operator()(const Zero& z) const { return z; }
    Data operator()(const Constant& c) const { return Constant{-c.value}; }
    Data operator()(const Sinusoid& s) const { return Sinusoid{-s.amplitude, s.frequency, s.phase}; }
    Data operator()(const PiecewiseUniform& p) const {
      return PiecewiseUniform{p.cell_width, -p.values};
    }
  };
  return DisturbanceSignal(std::visit(Visitor{}, data_), w_bar_, dim_, label_ + "-neg");
}

Vector default_sinusoid_frequencies(Eigen::Index dim) {
  Vector f(dim);
  const double base[] = {20.0, 27.0, 35.0};
  for (Eigen::Index i = 0; i < dim; ++i) {
    f(i) = i < 3 ? base[i] : 35.0 + 8.0 * static_cast<double>(i - 2);
  }
  return f;
}

DisturbanceSignal make_disturbance(const DisturbanceSpec& spec, double w_bar, Eigen::Index dim,
                                   std::uint64_t seed, double horizon) {
  auto sized = [dim](const Vector& v, const char* what) {
    if (v.size() != dim) {
      throw DimensionError(std::string("disturbance ") + what + " has " +
                           std::to_string(v.size()) + " entries, expected " +
                           std::to_string(dim));
    }
  };
  DisturbanceSignal signal = DisturbanceSignal::zero(dim);
  switch (spec.kind) {
    case DisturbanceKind::Zero:
      break;
    case DisturbanceKind::ConstantSign:
      sized(spec.sign, "sign");
      signal = DisturbanceSignal::constant_sign(spec.sign, w_bar);
      break;
    case DisturbanceKind::Sinusoid: {
      Vector amplitude = Vector::Constant(dim, w_bar);
      if (spec.amplitude.size()) amplitude = spec.amplitude;
      Vector frequency = spec.frequency.size() ? spec.frequency : default_sinusoid_frequencies(dim);
      Vector phase = Vector::Zero(dim);
      if (spec.phase.size()) phase = spec.phase;
      sized(amplitude, "amplitude");
      sized(frequency, "frequency");
      sized(phase, "phase");
      signal = DisturbanceSignal::sinusoid(amplitude, frequency, phase, w_bar);
      break;
    }
    case DisturbanceKind::PiecewiseUniform:
      signal = DisturbanceSignal::piecewise_uniform(seed, spec.cells, horizon, w_bar, dim);
      break;
  }
  if (!spec.label.empty()) signal.set_label(spec.label);
  return signal;
}

const char* to_string(DisturbanceKind kind) {
  switch (kind) {
    case DisturbanceKind::Zero:
      return "zero";
    case DisturbanceKind::ConstantSign:
      return "constant";
    case DisturbanceKind::Sinusoid:
      return "sinusoid";
    case DisturbanceKind::PiecewiseUniform:
      return "random";
  }
  return "unknown";
}

DisturbanceKind disturbance_kind_from_string(const std::string& name) {
  if (name == "zero" || name == "nominal") return DisturbanceKind::Zero;
  if (name == "constant" || name == "constant_sign") return DisturbanceKind::ConstantSign;
  if (name == "sinusoid") return DisturbanceKind::Sinusoid;
  if (name == "random" || name == "piecewise_uniform") return DisturbanceKind::PiecewiseUniform;
  throw ConfigError("unknown disturbance kind '" + name + "'");
}

}  // namespace dcost
