#include "dcost/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <variant>

#include "dcost/errors.hpp"

namespace dcost {

namespace {

// [e^{Ah}, int_0^h e^{As} ds] from the exponential of [[A, I], [0, 0]] h.
std::pair<Matrix, Matrix> step_pair(const Matrix& a, double h) {
  const Eigen::Index n = a.rows();
  Matrix block = Matrix::Zero(2 * n, 2 * n);
  block.topLeftCorner(n, n) = a;
  block.topRightCorner(n, n) = Matrix::Identity(n, n);
  const Matrix e = expm(block * h);
  return {e.topLeftCorner(n, n), e.topRightCorner(n, n)};
}

void check_horizon(double t_f, const char* what) {
  if (!(t_f > 0.0) || !std::isfinite(t_f)) {
    throw DomainError(std::string(what) + ": t_f must be positive, got " + std::to_string(t_f));
  }
}

// One composite Simpson sum with `panels` panels (even). Also returns the
// Simpson sum of ||e^{A(t_f - tau)}||_inf ||w(tau)||_inf as a scale.
std::pair<Vector, double> simpson_response(const Matrix& a,
                                           const std::function<Vector(double)>& w, double t_f,
                                           std::size_t panels) {
  const Eigen::Index n = a.rows();
  const double h = t_f / static_cast<double>(panels);
  const Matrix e = expm(a * h);
  Matrix power = Matrix::Identity(n, n);  // e^{A(t_f - tau_j)}, starting at j = panels
  Vector sum = Vector::Zero(n);
  double scale = 0.0;
  for (std::size_t j = panels + 1; j-- > 0;) {
    const double tau = j == panels ? t_f : static_cast<double>(j) * h;
    const double weight = (j == 0 || j == panels) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
    const Vector wj = w(tau);
    if (wj.size() != n) {
      throw DimensionError("disturbance has " + std::to_string(wj.size()) +
                           " channels, system has " + std::to_string(n) + " states");
    }
    sum += weight * (power * wj);
    scale += weight * norm(power, NormKind::Inf) * norm(wj, NormKind::Inf);
    power = power * e;
  }
  return {sum * (h / 3.0), scale * (h / 3.0)};
}

}  // namespace

StageCache::StageCache(const LtiSystem& sys, double t_f, std::size_t steps)
    : t_f_(t_f), steps_(steps) {
  check_horizon(t_f, "StageCache");
  if (steps == 0) throw DomainError("StageCache: steps must be positive");
  const Matrix bt = sys.B().transpose();
  const Matrix at = sys.A().transpose();
  maps_.reserve(2 * steps + 1);
  for (std::size_t j = 0; j <= 2 * steps; ++j) {
    maps_.push_back(bt * expm(at * (t_f - time(j))));
  }
}

double StageCache::time(std::size_t j) const {
  if (j >= 2 * steps_) return t_f_;
  return static_cast<double>(j) * 0.5 * step();
}

ControlSignal::ControlSignal(Matrix a, Matrix b, double t_f, Vector gain, ControlKind kind)
    : a_(std::move(a)), b_(std::move(b)), t_f_(t_f), gain_(std::move(gain)), kind_(kind) {
  if (gain_.size() != a_.rows() || b_.rows() != a_.rows()) {
    throw DimensionError("ControlSignal: gain vector does not match the system");
  }
}

Vector ControlSignal::operator()(double t) const {
  if (!(t >= 0.0 && t <= t_f_)) {
    throw DomainError("control signal is defined on [0, " + std::to_string(t_f_) +
                      "], evaluated at t = " + std::to_string(t));
  }
  return -(b_.transpose() * (expm(a_.transpose() * (t_f_ - t)) * gain_));
}

Vector ControlSignal::at_stage(const StageCache& cache, std::size_t j) const {
  if (cache.t_f() != t_f_ || cache.input_map(0).rows() != b_.cols()) {
    throw DomainError("stage cache was built for a different horizon or system");
  }
  return -(cache.input_map(j) * gain_);
}

void check_compatible(const LtiSystem& sys, const StabilizationTask& task,
                      const GramianBundle& bundle) {
  check_bundle(sys, bundle);
  if (task.x0().size() != sys.states()) {
    throw DimensionError("x0 has " + std::to_string(task.x0().size()) + " entries, system has " +
                         std::to_string(sys.states()) + " states");
  }
  if (std::abs(bundle.t_f - task.t_f()) > 1e-12 * task.t_f()) {
    throw DomainError("Gramian bundle built for t_f = " + std::to_string(bundle.t_f) +
                      ", task has t_f = " + std::to_string(task.t_f()));
  }
}

ControlSignal nominal_control(const LtiSystem& sys, const StabilizationTask& task,
                              const GramianBundle& bundle) {
  check_compatible(sys, task, bundle);
  Vector gain = bundle.W_inv * (bundle.transition * task.x0());
  return ControlSignal(sys.A(), sys.B(), task.t_f(), std::move(gain), ControlKind::Nominal);
}

Vector response_quadrature(const LtiSystem& sys, const std::function<Vector(double)>& w,
                           double t_f, const NumericSettings& settings) {
  check_horizon(t_f, "disturbance_response");
  std::size_t panels = std::max<std::size_t>(2, settings.response_min_panels);
  panels += panels % 2;
  Vector coarse = simpson_response(sys.A(), w, t_f, panels).first;
  while (true) {
    if (2 * panels > settings.response_max_panels) {
      throw NumericalError("disturbance_response: Simpson quadrature did not settle within " +
                               std::to_string(settings.response_max_panels) + " panels",
                           panels, norm(coarse, NormKind::Inf));
    }
    panels *= 2;
    auto [fine, fine_scale] = simpson_response(sys.A(), w, t_f, panels);
    const double change = norm(Vector(fine - coarse), NormKind::Inf);
    const double reference = std::max(norm(fine, NormKind::Inf), 1e-3 * fine_scale);
    if (change <= settings.response_tolerance * reference) return fine;
    coarse = std::move(fine);
  }
}

Vector disturbance_response(const LtiSystem& sys, const DisturbanceSignal& w, double t_f,
                            const NumericSettings& settings) {
  check_horizon(t_f, "disturbance_response");
  const Eigen::Index n = sys.states();
  if (w.dim() != n) {
    throw DimensionError("disturbance has " + std::to_string(w.dim()) + " channels, system has " +
                         std::to_string(n) + " states");
  }
  if (w.horizon() < t_f * (1.0 - 1e-12)) {
    throw DomainError("disturbance '" + w.label() + "' is only defined up to t = " +
                      std::to_string(w.horizon()) + " < t_f = " + std::to_string(t_f));
  }

  const auto& data = w.data();
  if (std::holds_alternative<DisturbanceSignal::Zero>(data)) {
    return Vector::Zero(n);
  }
  if (const auto* c = std::get_if<DisturbanceSignal::Constant>(&data)) {
    return step_pair(sys.A(), t_f).second * c->value;
  }
  if (const auto* p = std::get_if<DisturbanceSignal::PiecewiseUniform>(&data)) {
    // acc holds int_0^a e^{A(a - tau)} w(tau) dtau as a sweeps over the cells.
    const auto [e_full, phi_full] = step_pair(sys.A(), p->cell_width);
    Vector acc = Vector::Zero(n);
    double a = 0.0;
    for (Eigen::Index k = 0; k < p->values.rows(); ++k) {
      const double b = static_cast<double>(k + 1) * p->cell_width;
      const Vector wk = p->values.row(k).transpose();
      if (b <= t_f * (1.0 + 1e-12)) {
        acc = e_full * acc + phi_full * wk;
        a = b;
        if (std::abs(b - t_f) <= 1e-12 * t_f) break;
      } else {
        const auto [e_part, phi_part] = step_pair(sys.A(), t_f - a);
        acc = e_part * acc + phi_part * wk;
        break;
      }
    }
    return acc;
  }
  return response_quadrature(
      sys, [&w](double t) { return w(t); }, t_f, settings);
}

ControlSignal disturbed_control(const LtiSystem& sys, const StabilizationTask& task,
                                const GramianBundle& bundle, const Vector& response) {
  check_compatible(sys, task, bundle);
  if (response.size() != sys.states()) {
    throw DimensionError("disturbance response has wrong dimension");
  }
  Vector gain = bundle.W_inv * (bundle.transition * task.x0() + response);
  return ControlSignal(sys.A(), sys.B(), task.t_f(), std::move(gain), ControlKind::Disturbed);
}

ControlSignal disturbed_control(const LtiSystem& sys, const StabilizationTask& task,
                                const GramianBundle& bundle, const DisturbanceSignal& w,
                                const NumericSettings& settings) {
  check_compatible(sys, task, bundle);
  return disturbed_control(sys, task, bundle, disturbance_response(sys, w, task.t_f(), settings));
}

}  // namespace dcost
