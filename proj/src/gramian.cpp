#include "dcost/gramian.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <utility>

#include "dcost/errors.hpp"

namespace dcost {

namespace {

void check_horizon(double t_f, const char* what) {
  if (!(t_f > 0.0) || !std::isfinite(t_f)) {
    throw DomainError(std::string(what) + ": t_f must be positive, got " + std::to_string(t_f));
  }
}

/// Adaptive Simpson on a scalar integrand with a depth budget.
template <typename F>
class AdaptiveSimpson {
 public:
  AdaptiveSimpson(F f, std::size_t max_depth) : f_(std::move(f)), max_depth_(max_depth) {}

  double integrate(double a, double b, double tolerance) {
    const double fa = f_(a);
    const double fb = f_(b);
    const double m = 0.5 * (a + b);
    const double fm = f_(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double result = refine(a, b, fa, fm, fb, whole, tolerance, 0);
    if (exhausted_) {
      throw NumericalError("norm_integral: adaptive Simpson exceeded depth budget of " +
                               std::to_string(max_depth_) + " halvings",
                           max_depth_, result, error_bound_);
    }
    return result;
  }

 private:
  double refine(double a, double b, double fa, double fm, double fb, double whole,
                double tolerance, std::size_t depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f_(lm);
    const double frm = f_(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tolerance) {
      return left + right + delta / 15.0;
    }
    if (depth >= max_depth_) {
      exhausted_ = true;
      error_bound_ += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return refine(a, m, fa, flm, fm, left, 0.5 * tolerance, depth + 1) +
           refine(m, b, fm, frm, fb, right, 0.5 * tolerance, depth + 1);
  }

  F f_;
  std::size_t max_depth_;
  bool exhausted_ = false;
  double error_bound_ = 0.0;
};

}  // namespace

Matrix controllability_gramian(const LtiSystem& sys, double t_f, const NumericSettings& settings) {
  check_horizon(t_f, "controllability_gramian");
  const Eigen::Index n = sys.states();
  Matrix block = Matrix::Zero(2 * n, 2 * n);
  block.topLeftCorner(n, n) = sys.A();
  block.topRightCorner(n, n) = sys.B() * sys.B().transpose();
  block.bottomRightCorner(n, n) = -sys.A().transpose();

  // exp(block t) = [[e^{At}, F], [0, e^{-A^T t}]] with F e^{A^T t} = W_B.
  const Matrix e = expm(block * t_f);
  const Matrix w = symmetrize(e.topRightCorner(n, n) * e.topLeftCorner(n, n).transpose());

  const SpectralDecomposition spec = sym_eig(w, settings);
  const double top = spec.lambdas(0);
  const double bottom = spec.lambdas(n - 1);
  if (!(bottom > 0.0) || top / bottom > settings.condition_limit) {
    std::ostringstream msg;
    msg << "controllability Gramian is ill-conditioned at horizon t_f = " << t_f
        << " (lambda_max = " << top << ", lambda_min = " << bottom << ")";
    throw IllConditionedError(msg.str(), t_f, bottom > 0.0 ? top / bottom : INFINITY);
  }
  return w;
}

double norm_integral(const LtiSystem& sys, double t_f, const NumericSettings& settings) {
  check_horizon(t_f, "norm_integral");
  const Matrix& a = sys.A();
  auto integrand = [&a](double s) { return norm(expm(a * s), NormKind::Inf); };
  AdaptiveSimpson<decltype(integrand)> quad(integrand, settings.simpson_max_depth);
  return quad.integrate(0.0, t_f, settings.norm_integral_tolerance * t_f);
}

GramianBundle build_bundle(const LtiSystem& sys, double t_f, const NumericSettings& settings) {
  GramianBundle bundle;
  bundle.t_f = t_f;
  bundle.W = controllability_gramian(sys, t_f, settings);

  // Invert through the eigenpairs of W_B; the inverse's eigenvalues are the
  // reciprocals in reverse order.
  const SpectralDecomposition w_spec = sym_eig(bundle.W, settings);
  bundle.spec.U = w_spec.U.rowwise().reverse();  // column order reversed
  bundle.spec.lambdas = w_spec.lambdas.reverse().cwiseInverse();
  bundle.W_inv = symmetrize(bundle.spec.reconstruct());

  bundle.transition = expm(sys.A() * t_f);
  bundle.v_bar_unit = norm_integral(sys, t_f, settings);
  return bundle;
}

void check_bundle(const LtiSystem& sys, const GramianBundle& bundle) {
  if (bundle.states() != sys.states()) {
    throw DimensionError("Gramian bundle has " + std::to_string(bundle.states()) +
                         " states, system has " + std::to_string(sys.states()));
  }
}

}  // namespace dcost
