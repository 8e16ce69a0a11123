#pragma once

#include <cstddef>

namespace dcost {

/// Tolerances and iteration budgets shared by the numerical routines.
/// The defaults are what every test and the CLI use unless overridden.
struct NumericSettings {
  // Symmetric eigensolver (cyclic Jacobi).
  double jacobi_tolerance = 1e-12;  // stop once off(M) <= tol * ||M||_F
  std::size_t jacobi_max_sweeps = 100;
  double symmetry_tolerance = 1e-10;  // relative to ||M||_inf

  // Gramian.
  double condition_limit = 1e14;  // lambda_max / lambda_min of W_B
  std::size_t simpson_max_depth = 24;
  double norm_integral_tolerance = 1e-9;  // absolute, scaled by t_f

  // Controllability rank test: sigma_i > tol * sigma_max.
  double controllability_tolerance = 1e-10;

  // Disturbance response quadrature (Richardson halving).
  double response_tolerance = 1e-9;
  std::size_t response_min_panels = 64;
  std::size_t response_max_panels = std::size_t{1} << 20;
};

}  // namespace dcost
