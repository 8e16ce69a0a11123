#include "dcost/energy.hpp"

#include "dcost/errors.hpp"
#include "dcost/synthesis.hpp"

namespace dcost {

double weighted_energy(const GramianBundle& bundle, const Vector& z) {
  if (z.size() != bundle.states()) {
    throw DimensionError("weighted_energy: vector does not match the Gramian");
  }
  const Vector half = bundle.spec.lambdas.cwiseSqrt().cwiseProduct(bundle.spec.U.transpose() * z);
  return half.squaredNorm();
}

double nominal_energy(const LtiSystem& sys, const StabilizationTask& task,
                      const GramianBundle& bundle) {
  check_compatible(sys, task, bundle);
  return weighted_energy(bundle, bundle.transition * task.x0());
}

double disturbed_signal_energy(const LtiSystem& sys, const StabilizationTask& task,
                               const GramianBundle& bundle, const Vector& response) {
  check_compatible(sys, task, bundle);
  if (response.size() != sys.states()) {
    throw DimensionError("disturbance response has wrong dimension");
  }
  return weighted_energy(bundle, bundle.transition * task.x0() + response);
}

double disturbed_signal_energy(const LtiSystem& sys, const StabilizationTask& task,
                               const GramianBundle& bundle, const DisturbanceSignal& w,
                               const NumericSettings& settings) {
  check_compatible(sys, task, bundle);
  return disturbed_signal_energy(sys, task, bundle,
                                 disturbance_response(sys, w, task.t_f(), settings));
}

double q_bar(const GramianBundle& bundle, double w_bar) {
  if (!(w_bar >= 0.0)) throw DomainError("q_bar: w_bar must be nonnegative");
  return w_bar * norm(bundle.spec.U, NormKind::One) * bundle.v_bar_unit;
}

EnergyReport disturbed_energy_bound(const LtiSystem& sys, const StabilizationTask& task,
                                    const GramianBundle& bundle) {
  check_compatible(sys, task, bundle);
  EnergyReport report;
  report.E_N = nominal_energy(sys, task, bundle);
  report.q_bar = q_bar(bundle, task.w_bar());

  const Vector p = bundle.spec.lambdas.cwiseProduct(bundle.spec.U.transpose() *
                                                    (bundle.transition * task.x0()));
  report.cross_term = 2.0 * report.q_bar * norm(p, NormKind::One);
  report.c_term = report.q_bar * report.q_bar * bundle.spec.lambdas.sum();
  report.E_D_bound = report.E_N + report.cross_term + report.c_term;
  report.witness_q = report.q_bar * sign(p);
  return report;
}

}  // namespace dcost
