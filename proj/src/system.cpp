#include "dcost/system.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <string>
#include <utility>

#include "dcost/errors.hpp"

namespace dcost {

long controllability_rank(const Matrix& a, const Matrix& b, double tolerance) {
  const Eigen::Index n = a.rows();
  const Eigen::Index p = b.cols();
  if (n == 0 || p == 0) return 0;

  Matrix ctrb(n, n * p);
  Matrix block = b;
  for (Eigen::Index k = 0; k < n; ++k) {
    ctrb.middleCols(k * p, p) = block;
    block = a * block;
  }

  const Eigen::JacobiSVD<Matrix> svd(ctrb);
  const Vector& sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
  long rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > tolerance * sigma(0)) ++rank;
  }
  return rank;
}

LtiSystem::LtiSystem(Matrix a, Matrix b, std::string name, const NumericSettings& settings)
    : a_(std::move(a)), b_(std::move(b)), name_(std::move(name)) {
  if (a_.rows() != a_.cols() || a_.rows() == 0) {
    throw DimensionError("LtiSystem: A is " + std::to_string(a_.rows()) + "x" +
                         std::to_string(a_.cols()) + ", expected non-empty square");
  }
  if (b_.rows() != a_.rows() || b_.cols() == 0) {
    throw DimensionError("LtiSystem: B is " + std::to_string(b_.rows()) + "x" +
                         std::to_string(b_.cols()) + ", expected " + std::to_string(a_.rows()) +
                         " rows");
  }
  require_finite(a_, "LtiSystem A");
  require_finite(b_, "LtiSystem B");
  const long rank = controllability_rank(a_, b_, settings.controllability_tolerance);
  if (rank < a_.rows()) {
    throw ValidationError("LtiSystem '" + name_ + "': (A, B) is not controllable, rank " +
                              std::to_string(rank) + " < " + std::to_string(a_.rows()),
                          rank);
  }
}

StabilizationTask::StabilizationTask(Vector x0, double t_f, double w_bar)
    : x0_(std::move(x0)), t_f_(t_f), w_bar_(w_bar) {
  require_finite(x0_, "StabilizationTask x0");
  if (x0_.size() == 0 || x0_.isZero(0.0)) {
    throw DomainError("StabilizationTask: x0 must be nonzero");
  }
  if (!(t_f_ > 0.0) || !std::isfinite(t_f_)) {
    throw DomainError("StabilizationTask: t_f must be positive, got " + std::to_string(t_f_));
  }
  if (!(w_bar_ >= 0.0) || !std::isfinite(w_bar_)) {
    throw DomainError("StabilizationTask: w_bar must be nonnegative, got " +
                      std::to_string(w_bar_));
  }
}

}  // namespace dcost
