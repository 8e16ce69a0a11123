#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>

#include "dcost/linalg.hpp"

namespace dcost {

/// SplitMix64 stream. Uniform doubles are (next() >> 11) * 2^-53 in [0, 1).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (one draw per call; the sine branch is discarded).
  double normal();

 private:
  std::uint64_t state_;
};

/// Mixes a base seed with a stream index so parallel workers get independent streams.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

enum class DisturbanceKind { Zero, ConstantSign, Sinusoid, PiecewiseUniform };

/// Parameters for make_disturbance. Unused fields are ignored for a given kind.
struct DisturbanceSpec {
  DisturbanceKind kind = DisturbanceKind::Zero;
  Vector sign;  // ConstantSign: entries in {-1, 0, +1}
  Vector amplitude;  // Sinusoid: per channel, |a_i| <= w_bar; empty means w_bar everywhere
  Vector frequency;  // Sinusoid: rad/s
  Vector phase;      // Sinusoid: rad; empty means zero
  std::size_t cells = 1000;  // PiecewiseUniform: number of equal cells over the horizon
  std::string label;  // display name; kind name when empty
};

/// A disturbance w(t) with ||w(t)||_inf <= w_bar, guaranteed by construction.
///
/// Piecewise-uniform signals hold one i.i.d. uniform draw in [-w_bar, w_bar]^n per
/// cell, cell-major then channel order, from a SplitMix64 stream. They are
/// right-continuous; left_limit() gives the value approaching a cell boundary
/// from the left. Times within 1e-9 cells of a boundary snap to it.
class DisturbanceSignal {
 public:
  static DisturbanceSignal zero(Eigen::Index dim);
  static DisturbanceSignal constant_sign(const Vector& sign, double w_bar);
  static DisturbanceSignal sinusoid(const Vector& amplitude, const Vector& frequency,
                                    const Vector& phase, double w_bar);
  static DisturbanceSignal piecewise_uniform(std::uint64_t seed, std::size_t cells,
                                             double horizon, double w_bar, Eigen::Index dim);

  Vector operator()(double t) const;
  Vector left_limit(double t) const;

  DisturbanceKind kind() const;
  double w_bar() const { return w_bar_; }
  Eigen::Index dim() const { return dim_; }
  /// Latest time the signal is defined at; infinite for analytic kinds.
  double horizon() const;
  /// True when the signal is constant on each cell of a uniform grid.
  bool piecewise_constant() const;
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  /// The same signal with w replaced by -w.
  DisturbanceSignal negated() const;

  struct Zero {};
  struct Constant {
    Vector value;
  };
  struct Sinusoid {
    Vector amplitude;
    Vector frequency;
    Vector phase;
  };
  struct PiecewiseUniform {
    double cell_width = 0.0;
    Matrix values;  // cells x dim
  };
  using Data = std::variant<Zero, Constant, Sinusoid, PiecewiseUniform>;

  const Data& data() const { return data_; }

 private:
  DisturbanceSignal(Data data, double w_bar, Eigen::Index dim, std::string label);

  Vector evaluate(double t, bool from_left) const;

  Data data_;
  double w_bar_;
  Eigen::Index dim_;
  std::string label_;
};

/// Builds a signal from a spec, validating amplitudes against w_bar.
/// horizon is only used by piecewise-uniform signals.
DisturbanceSignal make_disturbance(const DisturbanceSpec& spec, double w_bar, Eigen::Index dim,
                                   std::uint64_t seed, double horizon);

/// Default sinusoid frequencies: 20, 27, 35 rad/s, continuing in steps of 8 for
/// wider states.
Vector default_sinusoid_frequencies(Eigen::Index dim);

const char* to_string(DisturbanceKind kind);
DisturbanceKind disturbance_kind_from_string(const std::string& name);

}  // namespace dcost
