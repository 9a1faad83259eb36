// Copyright 2026 The dasim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "dasim/errors.hpp"
#include "oracles.hpp"

namespace dasim {
namespace {

std::shared_ptr<const AdiabaticPath> tfim(int n) { return std::make_shared<const AdiabaticPath>(tfim_path(n)); }

StateVector basis_state(Index dim, Index k) {
  ComplexVector v = ComplexVector::Zero(dim);
  v(k) = 1.0;
  return StateVector(v);
}

TEST(Fidelity, TrivialCases) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  ComplexVector v(6);
  for (Index i = 0; i < 6; ++i) v(i) = cplx(g(rng), g(rng));
  const StateVector psi = StateVector::normalized(v);
  EXPECT_NEAR(fidelity_error(psi, psi), 0.0, 1e-7);
  EXPECT_NEAR(fidelity_error(psi, StateVector(std::exp(cplx(0.0, 1.234)) * psi.amplitudes())), 0.0, 1e-7);
  EXPECT_DOUBLE_EQ(fidelity_error(basis_state(4, 0), basis_state(4, 3)), 1.0);
  EXPECT_THROW(fidelity_error(basis_state(4, 0), basis_state(2, 0)), NumericalError);
}

TEST(Fidelity, KnownOverlap) {
  ComplexVector v(2);
  v << std::cos(0.3), std::sin(0.3);
  EXPECT_NEAR(fidelity_error(basis_state(2, 0), StateVector(v)), std::sin(0.3), 1e-15);
}

TEST(GroundState, DegenerateEndpointRejected) {
  ComplexMatrix h = ComplexMatrix::Zero(3, 3);
  h.diagonal() << -1.0, -1.0, 2.0;
  try {
    ground_state(h);
    FAIL();
  } catch (const NumericalError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateEndpoint);
  }
}

TEST(Triplet, LargeDepthHasSmallTrotterError) {
  const EvolutionSpec spec(tfim(2), 5.0, 10000);
  const auto t = error_triplet(spec);
  EXPECT_LE(t.eps_tro, 1e-3);
  EXPECT_LE(t.eps_tot, t.eps_adb + t.eps_tro + 1e-9);
}

TEST(Triplet, TriangleAndStateNormBound) {
  for (int n : {2, 3, 4}) {
    auto path = tfim(n);
    for (double t : {3.0, 12.0}) {
      for (int l : {5, 40}) {
        const EvolutionSpec spec(path, t, l);
        const auto tr = error_triplet(spec);
        EXPECT_LE(tr.eps_tot, tr.eps_adb + tr.eps_tro + 1e-9);
        EXPECT_LE(tr.eps_tot, tr.eps_adb_d + tr.eps_tro_d + 1e-9);
        const ComplexVector psi = ground_state(path->initial().matrix()).state;
        const ComplexVector exact = exact_evolution(spec).apply(psi);
        const ComplexVector tro = trotter_evolution(spec).apply(psi);
        EXPECT_LE(tr.eps_tro, std::sqrt(2.0 * (exact - tro).norm()) + 1e-9);
        for (double e : {tr.eps_tot, tr.eps_adb, tr.eps_tro}) {
          EXPECT_GE(e, 0.0);
          EXPECT_LE(e, 1.0);
        }
      }
    }
  }
}

TEST(Triplet, GlobalPhaseImmunity) {
  const auto base = tfim_path(3);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  const Index d = base.dim();
  const double ci = u(rng);
  const double cf = u(rng);
  auto shifted = std::make_shared<const AdiabaticPath>(
      HermitianOperator(base.initial().matrix() + ci * ComplexMatrix::Identity(d, d)),
      HermitianOperator(base.final().matrix() + cf * ComplexMatrix::Identity(d, d)));
  const auto a = error_triplet(EvolutionSpec(std::make_shared<const AdiabaticPath>(base), 9.0, 30));
  const auto b = error_triplet(EvolutionSpec(shifted, 9.0, 30));
  EXPECT_NEAR(a.eps_tot, b.eps_tot, 1e-8);
  EXPECT_NEAR(a.eps_adb, b.eps_adb, 1e-8);
  EXPECT_NEAR(a.eps_tro, b.eps_tro, 1e-8);
}

TEST(Triplet, AdiabaticErrorDecreasesWithTime) {
  auto path = tfim(4);
  double prev = 1.0;
  for (double t : {5.0, 10.0, 20.0, 40.0, 80.0}) {
    const auto tr = error_triplet(EvolutionSpec(path, t, 2), {ExactOptions{}, false, nullptr});
    EXPECT_LE(tr.eps_adb, 1.05 * prev) << "T = " << t;
    prev = tr.eps_adb;
  }
}

TEST(Bound, LinearScheduleHasNoCurvatureTerm) {
  // With p'' = 0 the integrand is 7 ||H'||^2 / gap^3 only; compare against an
  // independent Simpson sum using dense eigenvalues.
  const auto path = tfim_path(2);
  const auto b = adiabatic_bound(path, 10.0, 101);
  const oracle::Mat hx = oracle::tfim_x(2);
  const oracle::Mat hz = oracle::tfim_z(2);
  const double dnorm = oracle::spectral_norm(hz - hx);
  double acc = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double s = i / 100.0;
    Eigen::SelfAdjointEigenSolver<oracle::Mat> es((1 - s) * hx + s * hz);
    const double gap = es.eigenvalues()(1) - es.eigenvalues()(0);
    const double w = (i == 0 || i == 100) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += w * 7.0 * dnorm * dnorm / (gap * gap * gap);
  }
  EXPECT_NEAR(b.integral_term, acc / 300.0 / 10.0, 1e-10);
  EXPECT_NEAR(b.boundary_initial, dnorm / (10.0 * 4.0), 1e-12);   // gap(0) = 2
  EXPECT_NEAR(b.boundary_final, dnorm / (10.0 * 16.0), 1e-12);    // gap(1) = 4
  EXPECT_NEAR(b.total, b.boundary_initial + b.boundary_final + b.integral_term, 1e-15);
}

TEST(Bound, CurvatureTermForPolynomialSchedule) {
  const auto lin = tfim_path(2);
  const AdiabaticPath cubic(lin.initial(), lin.final(), Schedule::polynomial({0.0, 0.0, 3.0, -2.0}));
  const auto b = adiabatic_bound(cubic, 10.0);
  EXPECT_GT(b.integral_term, 0.0);
  EXPECT_DOUBLE_EQ(b.boundary_initial, 0.0);  // p'(0) = 0
  EXPECT_DOUBLE_EQ(b.boundary_final, 0.0);
}

TEST(Bound, ScalesAsInverseTime) {
  const auto path = tfim_path(4);
  EXPECT_NEAR(adiabatic_bound(path, 50.0).total, 0.5 * adiabatic_bound(path, 25.0).total, 1e-12);
}

TEST(Bound, QuadratureSelfConvergedTfimEight) {
  const auto path = tfim_path(8);
  const double a = adiabatic_bound(path, 100.0, 201).total;
  const double b = adiabatic_bound(path, 100.0, 401).total;
  EXPECT_GT(a, 0.0);
  EXPECT_TRUE(std::isfinite(a));
  EXPECT_LT(std::abs(a - b) / b, 1e-6);
}

TEST(Bound, GapClosureDetected) {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  ComplexMatrix b = ComplexMatrix::Zero(2, 2);
  a.diagonal() << -1.0, 1.0;
  b.diagonal() << 1.0, -1.0;
  const AdiabaticPath crossing{HermitianOperator(a), HermitianOperator(b)};
  try {
    adiabatic_bound(crossing, 10.0, 201);
    FAIL();
  } catch (const NumericalError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGapClosure);
  }
}

TEST(ScalingIndex, PowerLaws) {
  std::vector<std::pair<double, double>> inv;
  std::vector<std::pair<double, double>> inv2;
  for (double t : {4.0, 8.0, 16.0, 32.0, 64.0}) {
    inv.emplace_back(t, 3.0 / t);
    inv2.emplace_back(t, 3.0 / (t * t));
  }
  EXPECT_NEAR(scaling_index(inv), 1.0, 1e-12);
  EXPECT_NEAR(scaling_index(inv2), 2.0, 1e-12);
}

TEST(ScalingIndex, InputValidation) {
  std::vector<std::pair<double, double>> few = {{1, 1}, {2, 0.5}, {3, 0.3}};
  try {
    scaling_index(few);
    FAIL();
  } catch (const NumericalError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientData);
  }
  std::vector<std::pair<double, double>> unsorted = {{1, 1}, {3, 0.5}, {2, 0.3}, {4, 0.2}};
  EXPECT_THROW(scaling_index(unsorted), NumericalError);
  std::vector<std::pair<double, double>> zero = {{1, 1}, {2, 0.0}, {3, 0.3}, {4, 0.2}};
  EXPECT_THROW(scaling_index(zero), NumericalError);
}

}  // namespace
}  // namespace dasim
