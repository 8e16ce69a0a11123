#pragma once

#include <string>

#include "dcost/linalg.hpp"
#include "dcost/settings.hpp"

namespace dcost {

/// Numerical rank of the controllability matrix [B, AB, ..., A^{n-1}B]:
/// the number of singular values above tolerance * sigma_max.
long controllability_rank(const Matrix& a, const Matrix& b, double tolerance = 1e-10);

/// Continuous-time LTI pair (A, B) with x' = Ax + Bu.
/// Construction validates shapes, finiteness and controllability.
class LtiSystem {
 public:
  LtiSystem(Matrix a, Matrix b, std::string name = "", const NumericSettings& settings = {});

  const Matrix& A() const { return a_; }
  const Matrix& B() const { return b_; }
  const std::string& name() const { return name_; }

  /// State dimension n.
  Eigen::Index states() const { return a_.rows(); }
  /// Input dimension p.
  Eigen::Index inputs() const { return b_.cols(); }

 private:
  Matrix a_;
  Matrix b_;
  std::string name_;
};

/// Finite-time stabilization task: drive x0 to the origin at t_f under
/// disturbances bounded by ||w(t)||_inf <= w_bar.
class StabilizationTask {
 public:
  StabilizationTask(Vector x0, double t_f, double w_bar = 0.0);

  const Vector& x0() const { return x0_; }
  double t_f() const { return t_f_; }
  double w_bar() const { return w_bar_; }

 private:
  Vector x0_;
  double t_f_;
  double w_bar_;
};

}  // namespace dcost
