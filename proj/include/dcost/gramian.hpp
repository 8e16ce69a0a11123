#pragma once

#include "dcost/linalg.hpp"
#include "dcost/settings.hpp"
#include "dcost/system.hpp"

namespace dcost {

/// Finite-horizon controllability Gramian
///   W_B = int_0^{t_f} e^{At} B B^T e^{A^T t} dt,
/// read off the exponential of the block matrix [[A, BB^T], [0, -A^T]] t_f.
/// Throws IllConditionedError when lambda_max / lambda_min exceeds
/// settings.condition_limit.
Matrix controllability_gramian(const LtiSystem& sys, double t_f,
                               const NumericSettings& settings = {});

/// int_0^{t_f} ||e^{As}||_inf ds by adaptive Simpson quadrature.
double norm_integral(const LtiSystem& sys, double t_f, const NumericSettings& settings = {});

/// Everything the energy bound needs from (A, B, t_f), computed once.
struct GramianBundle {
  Matrix W;        // W_B
  Matrix W_inv;    // W_B^{-1}
  SpectralDecomposition spec;  // of W_B^{-1}: W_inv = U diag(lambdas) U^T
  Matrix transition;  // e^{A t_f}
  double t_f = 0.0;
  double v_bar_unit = 0.0;  // int_0^{t_f} ||e^{A(t_f - t)}||_inf dt

  Eigen::Index states() const { return W.rows(); }
};

GramianBundle build_bundle(const LtiSystem& sys, double t_f, const NumericSettings& settings = {});

/// Throws DimensionError unless the bundle was built for a system with sys.states() states.
void check_bundle(const LtiSystem& sys, const GramianBundle& bundle);

}  // namespace dcost
