#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "dcost/disturbance.hpp"
#include "dcost/linalg.hpp"
#include "dcost/synthesis.hpp"
#include "dcost/system.hpp"

namespace dcost {

/// Closed-loop samples on the uniform grid t_k = k t_f / steps.
struct Trajectory {
  std::vector<double> times;
  Matrix states;    // n x (steps + 1), column k is x(t_k)
  Matrix controls;  // p x (steps + 1), column k is u(t_k)
  std::vector<double> state_norms;     // ||x(t_k)||_2
  std::vector<double> control_energy;  // int_0^{t_k} ||u||_2^2 dt

  Eigen::Index samples() const { return states.cols(); }
  Vector terminal_state() const { return states.col(states.cols() - 1); }
};

/// Integrates x' = Ax + Bu(t) + w(t) from task.x0() with classical RK4 on
/// `steps` uniform intervals. The control is read from the stage cache; the
/// running energy adds Simpson's rule over each step using the stage midpoint.
/// steps must be at least 100. `cache` may be null, in which case one is built.
Trajectory simulate_closed_loop(const LtiSystem& sys, const StabilizationTask& task,
                                const ControlSignal& u, const DisturbanceSignal& w,
                                std::size_t steps, const StageCache* cache = nullptr);

/// CSV with header t,x1..xn,u1..up,xnorm,energy and shortest round-trip numbers.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

}  // namespace dcost
