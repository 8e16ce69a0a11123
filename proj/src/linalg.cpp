#include "dcost/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "dcost/errors.hpp"

namespace dcost {

Matrix SpectralDecomposition::reconstruct() const {
  return U * lambdas.asDiagonal() * U.transpose();
}

void require_finite(const Eigen::Ref<const Matrix>& m, const char* what) {
  if (!m.allFinite()) {
    throw DomainError(std::string(what) + ": non-finite entry");
  }
}

namespace {

// Degree-13 Pade coefficients and the 1-norm bound below which no scaling is
// needed for double precision (Higham, 2005).
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

}  // namespace

Matrix expm(const Eigen::Ref<const Matrix>& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("expm: matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected square");
  }
  require_finite(m, "expm");
  const Eigen::Index n = m.rows();
  if (n == 0) return Matrix(0, 0);

  const double norm1 = norm(Matrix(m), NormKind::One);
  if (norm1 == 0.0) return Matrix::Identity(n, n);
  int squarings = 0;
  if (norm1 > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
  }
  const Matrix a = m / std::ldexp(1.0, squarings);

  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const auto& b = kPade13;

  const Matrix u_inner =
      a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident;
  const Matrix u = a * u_inner;
  const Matrix v =
      a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;

  Matrix result = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) {
    result = result * result;
  }
  return result;
}

SpectralDecomposition sym_eig(const Eigen::Ref<const Matrix>& m, const NumericSettings& settings) {
  if (m.rows() != m.cols()) {
    throw DimensionError("sym_eig: matrix is not square");
  }
  require_finite(m, "sym_eig");
  const Eigen::Index n = m.rows();
  const double scale_inf = norm(Matrix(m), NormKind::Inf);
  const double asym = norm(Matrix(m - m.transpose()), NormKind::Inf);
  if (asym > settings.symmetry_tolerance * scale_inf) {
    throw DomainError("sym_eig: matrix is not symmetric (||M - M^T||_inf = " +
                      std::to_string(asym) + ")");
  }

  Matrix a = symmetrize(m);
  Matrix v = Matrix::Identity(n, n);
  const double threshold = settings.jacobi_tolerance * m.norm();

  auto off_diagonal = [&a, n] {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (i != j) sum += a(i, j) * a(i, j);
      }
    }
    return std::sqrt(sum);
  };

  std::size_t sweeps = 0;
  while (off_diagonal() > threshold) {
    if (sweeps == settings.jacobi_max_sweeps) {
      throw NumericalError("sym_eig: Jacobi iteration did not converge in " +
                               std::to_string(sweeps) + " sweeps",
                           sweeps, off_diagonal());
    }
    ++sweeps;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle that annihilates a(p, q).
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t = 0.0;
        if (std::isfinite(tau)) {
          t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&a](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });

  SpectralDecomposition out{Matrix(n, n), Vector(n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.lambdas(k) = a(src, src);
    out.U.col(k) = v.col(src);
  }
  return out;
}

double norm(const Vector& x, NormKind kind) {
  require_finite(x, "norm");
  switch (kind) {
    case NormKind::One:
      return x.cwiseAbs().sum();
    case NormKind::Two:
      return x.norm();
    case NormKind::Inf:
      return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
  }
  return 0.0;
}

double norm(const Matrix& m, NormKind kind) {
  require_finite(m, "norm");
  if (m.size() == 0) return 0.0;
  switch (kind) {
    case NormKind::One:
      return m.cwiseAbs().colwise().sum().maxCoeff();
    case NormKind::Inf:
      return m.cwiseAbs().rowwise().sum().maxCoeff();
    case NormKind::Two: {
      const Matrix gram = m.transpose() * m;
      const double top = sym_eig(gram).lambdas(0);
      return std::sqrt(std::max(top, 0.0));
    }
  }
  return 0.0;
}

Matrix symmetrize(const Eigen::Ref<const Matrix>& m) {
  return 0.5 * (m + m.transpose());
}

Vector sign(const Eigen::Ref<const Vector>& x) {
  Vector s(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    s(i) = x(i) > 0.0 ? 1.0 : (x(i) < 0.0 ? -1.0 : 0.0);
  }
  return s;
}

}  // namespace dcost
