#include <gtest/gtest.h>

#include <cmath>

#include "dcost/energy.hpp"
#include "dcost/errors.hpp"
#include "dcost/metrics.hpp"
#include "dcost/models.hpp"

using namespace dcost;

namespace {

LtiSystem scalar() { return LtiSystem(Matrix::Zero(1, 1), Matrix::Ones(1, 1), "integrator"); }

Vector sphere(SplitMix64& rng, Eigen::Index n, double radius) {
  Vector d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = rng.normal();
  return d * (radius / d.norm());
}

}  // namespace

TEST(AdditiveBound, ZeroDisturbance) {
  const auto sys = admire();
  const auto bundle = build_bundle(sys, 0.5);
  for (double R : {0.1, 1.0, 100.0}) EXPECT_EQ(additive_metric_bound(sys, bundle, 0.0, R), 0.0);
}

TEST(AdditiveBound, Scalar) {
  const auto sys = scalar();
  const auto bundle = build_bundle(sys, 1.0);
  const auto k = metric_coefficients(sys, bundle, 1.0);
  EXPECT_NEAR(k.c_term, 1.0, 1e-12);
  EXPECT_NEAR(k.gamma, 2.0, 1e-12);
  EXPECT_NEAR(additive_metric_bound(sys, bundle, 1.0, 2.0), 5.0, 1e-12);
}

TEST(AdditiveBound, AdmireContainment) {
  const auto sys = admire();
  const double t_f = 0.5;
  const auto bundle = build_bundle(sys, t_f);
  SplitMix64 rng(2024);
  for (double R : {0.1, 1.0, 10.0, 100.0, 1000.0}) {
    const double bound = additive_metric_bound(sys, bundle, 1.0, R);
    for (int s = 0; s < 500; ++s) {
      const Vector x0 = sphere(rng, 3, R * std::cbrt(rng.uniform()));
      const auto r = disturbed_energy_bound(sys, StabilizationTask(x0, t_f, 1.0), bundle);
      ASSERT_LE(r.E_D_bound - r.E_N, bound) << "R " << R;
    }
  }
}

TEST(MultiplicativeBound, ZeroDisturbance) {
  const auto sys = admire();
  const auto bundle = build_bundle(sys, 0.5);
  for (double R : {0.1, 1.0, 100.0}) EXPECT_EQ(multiplicative_metric_bound(sys, bundle, 0.0, R), 1.0);
}

TEST(MultiplicativeBound, ScalarIsTight) {
  const auto sys = scalar();
  const auto bundle = build_bundle(sys, 1.0);
  EXPECT_NEAR(metric_coefficients(sys, bundle, 1.0).l_min, 1.0, 1e-12);
  const double bound = multiplicative_metric_bound(sys, bundle, 1.0, 1.0);
  EXPECT_NEAR(bound, 0.25, 1e-12);
  const auto r = disturbed_energy_bound(sys, StabilizationTask(Vector::Ones(1), 1.0, 1.0), bundle);
  EXPECT_NEAR(r.E_N / r.E_D_bound, bound, 1e-12);
}

TEST(MultiplicativeBound, AdmireReportedValue) {
  const auto sys = admire();
  const auto bundle = build_bundle(sys, 0.5);
  EXPECT_NEAR(multiplicative_metric_bound(sys, bundle, 1.0, 100.0), 0.45, 0.02);
}

TEST(MultiplicativeBound, Containment) {
  const auto sys = admire();
  SplitMix64 rng(77);
  for (double t_f : {0.1, 0.5, 2.0}) {
    const auto bundle = build_bundle(sys, t_f);
    for (double R : {1.0, 100.0}) {
      const double bound = multiplicative_metric_bound(sys, bundle, 1.0, R);
      for (int s = 0; s < 200; ++s) {
        // ||x0|| >= R
        const Vector x0 = sphere(rng, 3, R * (1.0 + 3.0 * rng.uniform()));
        const auto r = disturbed_energy_bound(sys, StabilizationTask(x0, t_f, 1.0), bundle);
        ASSERT_GE(r.E_N / r.E_D_bound, bound);
      }
    }
  }
}

TEST(MultiplicativeBound, LimitBehaviour) {
  const auto sys = admire();
  const auto bundle = build_bundle(sys, 0.5);
  for (double R : {1.0, 10.0, 100.0}) {
    EXPECT_GT(multiplicative_metric_bound(sys, bundle, 1.0, 10.0 * R),
              multiplicative_metric_bound(sys, bundle, 1.0, R));
  }
  const auto k = metric_coefficients(sys, bundle, 1.0);
  const double R = 1e8;
  const double slack = k.gamma * std::sqrt(3.0) / (k.l_min * R) + k.c_term / (k.l_min * R * R);
  EXPECT_GE(multiplicative_metric_bound(sys, bundle, 1.0, R), 1.0 - slack - 1e-15);
  EXPECT_GE(multiplicative_metric_bound(sys, bundle, 1.0, R), 1.0 - 1e-4);
  EXPECT_THROW(multiplicative_metric_bound(sys, bundle, 1.0, 0.0), DomainError);
}

TEST(Hardness, Values) {
  EXPECT_EQ(hardness(0.0, 1.0), 0.0);
  EXPECT_EQ(hardness(5.0, 0.5), 10.0);
  EXPECT_THROW(hardness(1.0, 0.0), DomainError);
  // monotone in R and 1/t_f
  EXPECT_LT(hardness(1.0, 1.0), hardness(2.0, 1.0));
  EXPECT_LT(hardness(1.0, 1.0), hardness(1.0, 0.5));
}

TEST(MetricReport, Fields) {
  const auto sys = admire();
  const auto bundle = build_bundle(sys, 0.5);
  const auto m = metric_report(sys, bundle, 1.0, 100.0);
  EXPECT_EQ(m.R, 100.0);
  EXPECT_EQ(m.t_f, 0.5);
  EXPECT_EQ(m.hardness, 200.0);
  EXPECT_DOUBLE_EQ(m.r_A_bound, m.c_term + m.gamma * 100.0 * std::sqrt(3.0));
  EXPECT_DOUBLE_EQ(m.r_M_bound, multiplicative_metric_bound(sys, bundle, 1.0, 100.0));
}
