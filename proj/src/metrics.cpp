#include "dcost/metrics.hpp"

#include <cmath>
#include <string>

#include "dcost/energy.hpp"
#include "dcost/errors.hpp"

namespace dcost {

MetricCoefficients metric_coefficients(const LtiSystem& sys, const GramianBundle& bundle,
                                       double w_bar, const NumericSettings& settings) {
  check_bundle(sys, bundle);
  MetricCoefficients k;
  k.n = sys.states();
  const double q = q_bar(bundle, w_bar);
  const Matrix weighted =
      bundle.spec.lambdas.asDiagonal() * (bundle.spec.U.transpose() * bundle.transition);
  k.gamma = 2.0 * q * norm(weighted, NormKind::One);
  k.c_term = q * q * bundle.spec.lambdas.sum();

  const Matrix quad = bundle.transition.transpose() * bundle.W_inv * bundle.transition;
  k.l_min = sym_eig(symmetrize(quad), settings).lambdas(k.n - 1);
  return k;
}

double additive_bound(const MetricCoefficients& k, double R) {
  if (!(R >= 0.0)) throw DomainError("additive metric bound: R must be nonnegative");
  return k.c_term + k.gamma * R * std::sqrt(static_cast<double>(k.n));
}

double multiplicative_bound(const MetricCoefficients& k, double R) {
  if (!(R > 0.0)) {
    throw DomainError("multiplicative metric bound: R must be positive, got " + std::to_string(R));
  }
  const double lead = k.l_min * R * R;
  return lead / (lead + k.gamma * R * std::sqrt(static_cast<double>(k.n)) + k.c_term);
}

double additive_metric_bound(const LtiSystem& sys, const GramianBundle& bundle, double w_bar,
                             double R, const NumericSettings& settings) {
  return additive_bound(metric_coefficients(sys, bundle, w_bar, settings), R);
}

double multiplicative_metric_bound(const LtiSystem& sys, const GramianBundle& bundle,
                                   double w_bar, double R, const NumericSettings& settings) {
  if (!(R > 0.0)) {
    throw DomainError("multiplicative metric bound: R must be positive, got " + std::to_string(R));
  }
  return multiplicative_bound(metric_coefficients(sys, bundle, w_bar, settings), R);
}

double hardness(double R, double t_f) {
  if (!(t_f > 0.0)) throw DomainError("hardness: t_f must be positive");
  if (!(R >= 0.0)) throw DomainError("hardness: R must be nonnegative");
  return R / t_f;
}

MetricReport metric_report(const LtiSystem& sys, const GramianBundle& bundle, double w_bar,
                           double R, const NumericSettings& settings) {
  const MetricCoefficients k = metric_coefficients(sys, bundle, w_bar, settings);
  MetricReport report;
  report.R = R;
  report.t_f = bundle.t_f;
  report.r_A_bound = additive_bound(k, R);
  report.r_M_bound = multiplicative_bound(k, R);
  report.hardness = hardness(R, bundle.t_f);
  report.gamma = k.gamma;
  report.c_term = k.c_term;
  report.l_min = k.l_min;
  return report;
}

}  // namespace dcost
