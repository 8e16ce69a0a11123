#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "dcost/disturbance.hpp"
#include "dcost/gramian.hpp"
#include "dcost/linalg.hpp"
#include "dcost/settings.hpp"
#include "dcost/system.hpp"

namespace dcost {

/// B^T e^{A^T (t_f - t)} tabulated at the RK4 stage times t = j h / 2,
/// j = 0 .. 2 * steps, of a uniform grid with h = t_f / steps.
class StageCache {
 public:
  StageCache(const LtiSystem& sys, double t_f, std::size_t steps);

  std::size_t steps() const { return steps_; }
  double t_f() const { return t_f_; }
  double step() const { return t_f_ / static_cast<double>(steps_); }
  /// Time of half-step node j.
  double time(std::size_t j) const;
  const Matrix& input_map(std::size_t j) const { return maps_[j]; }

 private:
  double t_f_;
  std::size_t steps_;
  std::vector<Matrix> maps_;
};

enum class ControlKind { Nominal, Disturbed };

/// Open-loop control u(t) = -B^T e^{A^T (t_f - t)} g on [0, t_f], where g is the
/// constant gain vector W_B^{-1} [e^{A t_f} x0 + R(w, t_f)].
class ControlSignal {
 public:
  ControlSignal(Matrix a, Matrix b, double t_f, Vector gain, ControlKind kind);

  /// Throws DomainError for t outside [0, t_f].
  Vector operator()(double t) const;
  /// Value at half-step node j of a cache built for the same system and horizon.
  Vector at_stage(const StageCache& cache, std::size_t j) const;

  const Vector& gain_vector() const { return gain_; }
  double t_f() const { return t_f_; }
  ControlKind kind() const { return kind_; }
  Eigen::Index inputs() const { return b_.cols(); }

 private:
  Matrix a_;
  Matrix b_;
  double t_f_;
  Vector gain_;
  ControlKind kind_;
};

/// Minimum-energy control reaching x(t_f) = 0 without disturbance.
ControlSignal nominal_control(const LtiSystem& sys, const StabilizationTask& task,
                              const GramianBundle& bundle);

/// R(w, t_f) = int_0^{t_f} e^{A(t_f - tau)} w(tau) dtau.
///
/// Piecewise-constant signals are integrated exactly cell by cell through the
/// augmented exponential of [[A, I], [0, 0]]; sinusoids go through
/// response_quadrature.
Vector disturbance_response(const LtiSystem& sys, const DisturbanceSignal& w, double t_f,
                            const NumericSettings& settings = {});

/// Composite Simpson for R(w, t_f) on an arbitrary signal, doubling the panel
/// count until the change is below settings.response_tolerance relative to
/// max(||R||_inf, 1e-3 * int ||e^{A(t_f - tau)}||_inf ||w(tau)||_inf dtau).
Vector response_quadrature(const LtiSystem& sys, const std::function<Vector(double)>& w,
                           double t_f, const NumericSettings& settings = {});

/// Minimum-energy control reaching x(t_f) = 0 against a disturbance known in advance.
ControlSignal disturbed_control(const LtiSystem& sys, const StabilizationTask& task,
                               const GramianBundle& bundle, const DisturbanceSignal& w,
                               const NumericSettings& settings = {});

/// Same as above with R(w, t_f) already computed.
ControlSignal disturbed_control(const LtiSystem& sys, const StabilizationTask& task,
                                const GramianBundle& bundle, const Vector& response);

/// Throws unless bundle and task agree with the system (states, horizon).
void check_compatible(const LtiSystem& sys, const StabilizationTask& task,
                      const GramianBundle& bundle);

}  // namespace dcost
