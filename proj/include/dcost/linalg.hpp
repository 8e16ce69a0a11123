#pragma once

#include <Eigen/Dense>

#include "dcost/settings.hpp"

namespace dcost {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class NormKind { One, Two, Inf };

/// Eigenpairs of a symmetric matrix M = U diag(lambdas) U^T.
/// Eigenvalues are sorted in descending order; column j of U belongs to lambdas(j).
struct SpectralDecomposition {
  Matrix U;
  Vector lambdas;

  /// U diag(lambdas) U^T.
  Matrix reconstruct() const;
};

/// Throws DomainError if any entry is NaN or infinite.
void require_finite(const Eigen::Ref<const Matrix>& m, const char* what);

/// Matrix exponential by scaling and squaring with a degree-13 Pade approximant.
/// The scaling power is chosen from ||M||_1.
Matrix expm(const Eigen::Ref<const Matrix>& m);

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// The input must be symmetric within settings.symmetry_tolerance * ||M||_inf.
/// Iteration stops once the off-diagonal Frobenius mass is at most
/// settings.jacobi_tolerance * ||M||_F. Ties in the descending sort keep the
/// order in which the sweeps left the diagonal.
SpectralDecomposition sym_eig(const Eigen::Ref<const Matrix>& m,
                              const NumericSettings& settings = {});

double norm(const Vector& x, NormKind kind);

/// Induced matrix norms: One = max column absolute sum, Inf = max row absolute
/// sum, Two = largest singular value.
double norm(const Matrix& m, NormKind kind);

/// (M + M^T) / 2.
Matrix symmetrize(const Eigen::Ref<const Matrix>& m);

/// Elementwise sign with sign(0) = 0.
Vector sign(const Eigen::Ref<const Vector>& x);

}  // namespace dcost
