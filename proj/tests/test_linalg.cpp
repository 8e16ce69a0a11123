#include <gtest/gtest.h>

#include <cmath>

#include "dcost/disturbance.hpp"
#include "dcost/errors.hpp"
#include "dcost/linalg.hpp"
#include "dcost/models.hpp"
#include "oracles.hpp"

using namespace dcost;

namespace {

Matrix random_matrix(SplitMix64& rng, Eigen::Index n, double scale) {
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rng.uniform(-scale, scale);
  return m;
}

}  // namespace

TEST(Expm, ZeroIsIdentity) {
  EXPECT_EQ(expm(Matrix::Zero(3, 3)), Matrix::Identity(3, 3));
}

TEST(Expm, Diagonal) {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  const Matrix e = expm(d);
  EXPECT_NEAR(e(0, 0), std::exp(1.0), 1e-14);
  EXPECT_NEAR(e(1, 1), std::exp(2.0), 1e-13);
  EXPECT_EQ(e(0, 1), 0.0);
  EXPECT_EQ(e(1, 0), 0.0);
}

TEST(Expm, AdmireMatchesTaylor) {
  const Matrix m = admire_spec().A * 0.5;
  const Matrix err = expm(m) - oracle::taylor_expm(m, 50);
  EXPECT_LT(err.cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Expm, LargeNormUsesScaling) {
  Matrix m(2, 2);
  m << -20.0, 15.0, 3.0, -12.0;
  const Matrix err = expm(m) - oracle::taylor_expm_squared(m, 10, 40);
  EXPECT_LT(err.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Expm, InverseProperty) {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 2 + trial % 5;
    Matrix m = random_matrix(rng, n, 2.0);
    // shift to make it stable, then rescale to infinity norm <= 10
    m -= (oracle::inf_norm(m) + 0.1) * Matrix::Identity(n, n);
    m *= std::min(1.0, 10.0 / oracle::inf_norm(m));
    const Matrix prod = expm(m) * expm(-m);
    EXPECT_LT((prod - Matrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-8 * n) << "trial " << trial;
  }
}

TEST(Expm, RejectsBadInput) {
  EXPECT_THROW(expm(Matrix::Zero(2, 3)), DimensionError);
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = std::nan("");
  EXPECT_THROW(expm(m), DomainError);
}

TEST(SymEig, Identity) {
  const auto s = sym_eig(Matrix::Identity(3, 3));
  EXPECT_TRUE(s.lambdas.isApprox(Vector::Ones(3)));
  EXPECT_TRUE((s.U.transpose() * s.U).isApprox(Matrix::Identity(3, 3)));
}

TEST(SymEig, DiagonalSortedDescending) {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 3.0;
  const auto s = sym_eig(d);
  EXPECT_DOUBLE_EQ(s.lambdas(0), 3.0);
  EXPECT_DOUBLE_EQ(s.lambdas(1), 1.0);
  EXPECT_DOUBLE_EQ(std::abs(s.U(1, 0)), 1.0);
  EXPECT_DOUBLE_EQ(std::abs(s.U(0, 1)), 1.0);
}

TEST(SymEig, RandomInvariants) {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index n = 1 + trial % 8;
    const Matrix g = random_matrix(rng, n, 3.0);
    const Matrix m = g + g.transpose();
    const auto s = sym_eig(m);
    for (Eigen::Index i = 1; i < n; ++i) EXPECT_GE(s.lambdas(i - 1), s.lambdas(i));
    EXPECT_LT((s.U.transpose() * s.U - Matrix::Identity(n, n)).norm(), 1e-12 * n);
    EXPECT_LT((s.reconstruct() - m).norm(), 1e-11 * (1.0 + m.norm()));
    // eigenvalues agree with an independent solver
    Eigen::SelfAdjointEigenSolver<Matrix> ref(m);
    const Vector expected = ref.eigenvalues().reverse();
    EXPECT_LT((s.lambdas - expected).cwiseAbs().maxCoeff(), 1e-10 * (1.0 + m.norm()));
  }
}

TEST(SymEig, RejectsAsymmetric) {
  Matrix m(2, 2);
  m << 1.0, 2.0, 0.0, 1.0;
  EXPECT_THROW(sym_eig(m), DomainError);
}

TEST(Norm, Examples) {
  Vector v(2);
  v << 3.0, -4.0;
  EXPECT_DOUBLE_EQ(norm(v, NormKind::Two), 5.0);
  EXPECT_DOUBLE_EQ(norm(v, NormKind::One), 7.0);
  EXPECT_DOUBLE_EQ(norm(v, NormKind::Inf), 4.0);
  Matrix m(2, 2);
  m << 1.0, -2.0, 3.0, 4.0;
  EXPECT_DOUBLE_EQ(norm(m, NormKind::One), 6.0);
  EXPECT_DOUBLE_EQ(norm(m, NormKind::Inf), 7.0);
  Eigen::JacobiSVD<Matrix> svd(m);
  EXPECT_NEAR(norm(m, NormKind::Two), svd.singularValues()(0), 1e-12);
}

TEST(Norm, SubMultiplicative) {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 1 + trial % 6;
    const Matrix a = random_matrix(rng, n, 5.0);
    const Matrix b = random_matrix(rng, n, 5.0);
    for (NormKind k : {NormKind::One, NormKind::Two, NormKind::Inf}) {
      EXPECT_LE(norm(Matrix(a * b), k), norm(a, k) * norm(b, k) + 1e-12);
    }
  }
}

TEST(Norm, OneVersusTwo) {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = 1 + trial % 10;
    Vector x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = rng.normal();
    EXPECT_LE(norm(x, NormKind::One), std::sqrt(static_cast<double>(n)) * norm(x, NormKind::Two) + 1e-12);
  }
}

TEST(Sign, ZeroMapsToZero) {
  Vector x(3);
  x << -2.0, 0.0, 0.5;
  const Vector s = sign(x);
  EXPECT_EQ(s(0), -1.0);
  EXPECT_EQ(s(1), 0.0);
  EXPECT_EQ(s(2), 1.0);
}
