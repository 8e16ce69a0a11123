#include "dcost/simulate.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "dcost/errors.hpp"
#include "dcost/format.hpp"

namespace dcost {

Trajectory simulate_closed_loop(const LtiSystem& sys, const StabilizationTask& task,
                                const ControlSignal& u, const DisturbanceSignal& w,
                                std::size_t steps, const StageCache* cache) {
  if (steps < 100) {
    throw DomainError("simulate_closed_loop: steps must be at least 100, got " +
                      std::to_string(steps));
  }
  const Eigen::Index n = sys.states();
  const Eigen::Index p = sys.inputs();
  if (task.x0().size() != n || w.dim() != n || u.inputs() != p) {
    throw DimensionError("simulate_closed_loop: task, control or disturbance does not match the system");
  }
  if (u.t_f() != task.t_f()) {
    throw DomainError("control signal is defined on [0, " + std::to_string(u.t_f()) +
                      "], task horizon is " + std::to_string(task.t_f()));
  }
  if (w.horizon() < task.t_f() * (1.0 - 1e-12)) {
    throw DomainError("disturbance '" + w.label() + "' is undefined beyond t = " +
                      std::to_string(w.horizon()));
  }

  std::optional<StageCache> own_cache;
  if (cache == nullptr || cache->steps() != steps || cache->t_f() != task.t_f()) {
    own_cache.emplace(sys, task.t_f(), steps);
    cache = &*own_cache;
  }

  const Matrix& a = sys.A();
  const Matrix& b = sys.B();
  const double h = cache->step();

  Trajectory traj;
  traj.times.resize(steps + 1);
  traj.states.resize(n, static_cast<Eigen::Index>(steps + 1));
  traj.controls.resize(p, static_cast<Eigen::Index>(steps + 1));
  traj.state_norms.resize(steps + 1);
  traj.control_energy.resize(steps + 1);

  Vector x = task.x0();
  Vector u_start = u.at_stage(*cache, 0);
  traj.times[0] = 0.0;
  traj.states.col(0) = x;
  traj.controls.col(0) = u_start;
  traj.state_norms[0] = x.norm();
  traj.control_energy[0] = 0.0;

  for (std::size_t k = 0; k < steps; ++k) {
    const double t0 = cache->time(2 * k);
    const double tm = cache->time(2 * k + 1);
    const double t1 = cache->time(2 * k + 2);
    const Vector u_mid = u.at_stage(*cache, 2 * k + 1);
    const Vector u_end = u.at_stage(*cache, 2 * k + 2);
    const Vector f_start = b * u_start + w(t0);
    const Vector f_mid = b * u_mid + w(tm);
    // Left limit so a piecewise-constant w keeps its cell value through the step.
    const Vector f_end = b * u_end + w.left_limit(t1);

    const Vector k1 = a * x + f_start;
    const Vector k2 = a * (x + 0.5 * h * k1) + f_mid;
    const Vector k3 = a * (x + 0.5 * h * k2) + f_mid;
    const Vector k4 = a * (x + h * k3) + f_end;
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double step_energy =
        (h / 6.0) * (u_start.squaredNorm() + 4.0 * u_mid.squaredNorm() + u_end.squaredNorm());

    traj.times[k + 1] = t1;
    traj.states.col(static_cast<Eigen::Index>(k + 1)) = x;
    traj.controls.col(static_cast<Eigen::Index>(k + 1)) = u_end;
    traj.state_norms[k + 1] = x.norm();
    traj.control_energy[k + 1] = traj.control_energy[k] + step_energy;
    u_start = u_end;
  }
  return traj;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  const Eigen::Index n = traj.states.rows();
  const Eigen::Index p = traj.controls.rows();
  out << "t";
  for (Eigen::Index i = 0; i < n; ++i) out << ",x" << (i + 1);
  for (Eigen::Index i = 0; i < p; ++i) out << ",u" << (i + 1);
  out << ",xnorm,energy\n";
  for (Eigen::Index k = 0; k < traj.samples(); ++k) {
    const auto idx = static_cast<std::size_t>(k);
    out << format_double(traj.times[idx]);
    for (Eigen::Index i = 0; i < n; ++i) out << ',' << format_double(traj.states(i, k));
    for (Eigen::Index i = 0; i < p; ++i) out << ',' << format_double(traj.controls(i, k));
    out << ',' << format_double(traj.state_norms[idx]) << ','
        << format_double(traj.control_energy[idx]) << '\n';
  }
}

}  // namespace dcost
