#pragma once

#include "dcost/disturbance.hpp"
#include "dcost/gramian.hpp"
#include "dcost/linalg.hpp"
#include "dcost/settings.hpp"
#include "dcost/system.hpp"

namespace dcost {

/// Worst-case energy bound and its ingredients for one task.
///
/// E_D_bound = E_N + cross_term + c_term, with
///   q_bar      = w_bar ||U||_1 v_bar_unit,
///   p          = Lambda U^T e^{A t_f} x0,
///   cross_term = 2 q_bar ||p||_1,
///   c_term     = q_bar^2 sum(lambda_i),
/// and witness_q = q_bar sign(p) the maximizer of the relaxed problem over
/// ||q||_inf <= q_bar.
struct EnergyReport {
  double E_N = 0.0;
  double E_D_bound = 0.0;
  double q_bar = 0.0;
  Vector witness_q;
  double c_term = 0.0;
  double cross_term = 0.0;
};

/// z^T W_B^{-1} z evaluated as ||Lambda^{1/2} U^T z||_2^2, so never negative.
double weighted_energy(const GramianBundle& bundle, const Vector& z);

/// x0^T e^{A^T t_f} W_B^{-1} e^{A t_f} x0.
double nominal_energy(const LtiSystem& sys, const StabilizationTask& task,
                      const GramianBundle& bundle);

/// ||u_D||^2 for the disturbance w known in advance.
double disturbed_signal_energy(const LtiSystem& sys, const StabilizationTask& task,
                               const GramianBundle& bundle, const DisturbanceSignal& w,
                               const NumericSettings& settings = {});

/// ||u_D||^2 with R(w, t_f) already computed.
double disturbed_signal_energy(const LtiSystem& sys, const StabilizationTask& task,
                               const GramianBundle& bundle, const Vector& response);

/// q_bar = w_bar ||U||_1 v_bar_unit.
double q_bar(const GramianBundle& bundle, double w_bar);

EnergyReport disturbed_energy_bound(const LtiSystem& sys, const StabilizationTask& task,
                                    const GramianBundle& bundle);

}  // namespace dcost
