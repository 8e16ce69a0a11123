#pragma once

#include "dcost/gramian.hpp"
#include "dcost/settings.hpp"
#include "dcost/system.hpp"

namespace dcost {

/// Closed-form cost-of-disturbance bounds at one (R, t_f).
///
///   r_A_bound = c + gamma R sqrt(n)
///   r_M_bound = l R^2 / (l R^2 + gamma R sqrt(n) + c)
///
/// with c = q_bar^2 sum(lambda_i), gamma = 2 q_bar ||Lambda U^T e^{A t_f}||_1 and
/// l = lambda_min(e^{A^T t_f} W_B^{-1} e^{A t_f}).
struct MetricReport {
  double R = 0.0;
  double t_f = 0.0;
  double r_A_bound = 0.0;
  double r_M_bound = 0.0;
  double hardness = 0.0;
  double gamma = 0.0;
  double c_term = 0.0;
  double l_min = 0.0;
};

/// Scalars the bounds are built from; independent of R.
struct MetricCoefficients {
  double gamma = 0.0;
  double c_term = 0.0;
  double l_min = 0.0;
  Eigen::Index n = 0;
};

MetricCoefficients metric_coefficients(const LtiSystem& sys, const GramianBundle& bundle,
                                       double w_bar, const NumericSettings& settings = {});

/// Upper bound on the additional energy over ||x0||_2 <= R.
double additive_metric_bound(const LtiSystem& sys, const GramianBundle& bundle, double w_bar,
                             double R, const NumericSettings& settings = {});

/// Lower bound on E_N / E_D over ||x0||_2 >= R. R must be positive.
double multiplicative_metric_bound(const LtiSystem& sys, const GramianBundle& bundle,
                                   double w_bar, double R, const NumericSettings& settings = {});

/// R / t_f.
double hardness(double R, double t_f);

MetricReport metric_report(const LtiSystem& sys, const GramianBundle& bundle, double w_bar,
                           double R, const NumericSettings& settings = {});

double additive_bound(const MetricCoefficients& k, double R);
double multiplicative_bound(const MetricCoefficients& k, double R);

}  // namespace dcost
