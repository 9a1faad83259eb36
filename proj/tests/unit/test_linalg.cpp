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

#include "dasim/linalg.hpp"
#include "oracles.hpp"

namespace dasim {
namespace {

ComplexMatrix diag2(double a, double b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

TEST(HermitianEig, DiagonalInputGivesIdentityBasis) {
  const auto d = hermitian_eig(diag2(1.0, 2.0));
  EXPECT_DOUBLE_EQ(d.eigenvalues(0), 1.0);
  EXPECT_DOUBLE_EQ(d.eigenvalues(1), 2.0);
  EXPECT_LT((d.eigenvectors - ComplexMatrix::Identity(2, 2)).norm(), 1e-14);
}

TEST(HermitianEig, PauliXSpectrum) {
  const auto d = hermitian_eig(oracle::pauli('X'));
  EXPECT_NEAR(d.eigenvalues(0), -1.0, 1e-14);
  EXPECT_NEAR(d.eigenvalues(1), 1.0, 1e-14);
}

TEST(HermitianEig, ReconstructionUpToDim256) {
  std::mt19937_64 rng(11);
  for (Index n : {2, 8, 37, 128, 256}) {
    const ComplexMatrix h = oracle::random_hermitian(rng, n);
    const auto d = hermitian_eig(h);
    EXPECT_LE(oracle::spectral_norm(h - d.reconstruct()), 1e-10) << "dim " << n;
    EXPECT_LE((d.eigenvectors.adjoint() * d.eigenvectors - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff(),
              1e-10);
    for (Index i = 1; i < n; ++i) EXPECT_LE(d.eigenvalues(i - 1), d.eigenvalues(i));
  }
}

TEST(HermitianEig, GaugeLargestEntryRealPositive) {
  std::mt19937_64 rng(5);
  const auto d = hermitian_eig(oracle::random_hermitian(rng, 16));
  for (Index c = 0; c < d.dim(); ++c) {
    Index pivot = 0;
    d.eigenvectors.col(c).cwiseAbs().maxCoeff(&pivot);
    EXPECT_EQ(d.eigenvectors(pivot, c).imag(), 0.0);
    EXPECT_GT(d.eigenvectors(pivot, c).real(), 0.0);
  }
}

TEST(HermitianEig, GaugeDeterministicBitIdentical) {
  std::mt19937_64 rng(6);
  const ComplexMatrix h = oracle::random_hermitian(rng, 32);
  const auto a = hermitian_eig(h);
  const auto b = hermitian_eig(h);
  EXPECT_TRUE(a.eigenvectors == b.eigenvectors);
}

TEST(HermitianEig, TieBreaksToLowestIndex) {
  // Eigenvector (1, 1)/sqrt2 up to phase: both entries tie in magnitude.
  ComplexMatrix v(2, 1);
  v << cplx(0.0, 1.0) / std::sqrt(2.0), cplx(0.0, 1.0) / std::sqrt(2.0);
  fix_largest_entry_gauge(v);
  EXPECT_NEAR(v(0, 0).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(v(0, 0).imag(), 0.0);
}

TEST(HermitianEig, DegenerateClusterOrthonormal) {
  std::mt19937_64 rng(8);
  Eigen::VectorXd spectrum(6);
  spectrum << -1, 0.5, 0.5, 0.5, 2, 3;
  const ComplexMatrix h = oracle::with_spectrum(rng, spectrum);
  const auto d = hermitian_eig(h);
  EXPECT_LE((d.eigenvectors.adjoint() * d.eigenvectors - ComplexMatrix::Identity(6, 6)).norm(), 1e-12);
  EXPECT_LE(oracle::spectral_norm(h - d.reconstruct()), 1e-12);
}

TEST(HermitianEig, RejectsNonHermitian) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  try {
    hermitian_eig(m);
    FAIL();
  } catch (const NumericalError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotHermitian);
  }
}

TEST(UnitaryEig, IdentityHasZeroPhases) {
  const auto u = unitary_eig(ComplexMatrix::Identity(4, 4));
  for (Index i = 0; i < 4; ++i) EXPECT_NEAR(u.phases(i), 0.0, 1e-14);
}

TEST(UnitaryEig, MinusIdentityOnUpperBranch) {
  const auto u = unitary_eig(-ComplexMatrix::Identity(2, 2));
  EXPECT_DOUBLE_EQ(u.phases(0), kPi);
  EXPECT_DOUBLE_EQ(u.phases(1), kPi);
}

TEST(UnitaryEig, RecoversHamiltonianPhases) {
  std::mt19937_64 rng(9);
  Eigen::VectorXd spectrum(5);
  spectrum << -2.5, -1.0, 0.25, 1.5, 2.75;
  const ComplexMatrix h = oracle::with_spectrum(rng, spectrum);
  const double dt = 1.1;  // |E| dt < pi
  const auto u = unitary_eig(oracle::taylor_exp(h, dt));
  for (Index i = 0; i < 5; ++i) EXPECT_NEAR(u.phases(i), spectrum(i) * dt, 1e-10);
  const ComplexMatrix rebuilt =
      u.eigenvectors * (-cplx(0.0, 1.0) * u.phases.cast<cplx>()).array().exp().matrix().asDiagonal() *
      u.eigenvectors.adjoint();
  EXPECT_LE(oracle::spectral_norm(rebuilt - oracle::taylor_exp(h, dt)), 1e-10);
}

TEST(UnitaryEig, DegeneratePhasesSplitCleanly) {
  std::mt19937_64 rng(10);
  const ComplexMatrix q = oracle::random_unitary(rng, 6);
  Eigen::VectorXcd d(6);
  const double th[6] = {-3.0, -1.0, -1.0, 0.3, 2.0, 2.0};
  for (int i = 0; i < 6; ++i) d(i) = std::exp(cplx(0.0, -th[i]));
  const ComplexMatrix u = q * d.asDiagonal() * q.adjoint();
  const auto e = unitary_eig(u);
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(e.phases(i), th[i], 1e-10);
  EXPECT_LE((e.eigenvectors.adjoint() * e.eigenvectors - ComplexMatrix::Identity(6, 6)).norm(), 1e-10);
}

TEST(UnitaryEig, RejectsNonUnitary) {
  try {
    unitary_eig(2.0 * ComplexMatrix::Identity(2, 2));
    FAIL();
  } catch (const NumericalError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotUnitary);
  }
}

TEST(MatrixExp, ZeroTimeIsIdentity) {
  std::mt19937_64 rng(1);
  EXPECT_LE((matrix_exp_hermitian(oracle::random_hermitian(rng, 4), 0.0) - ComplexMatrix::Identity(4, 4)).norm(),
            1e-14);
}

TEST(MatrixExp, PauliZAtPiIsMinusIdentity) {
  EXPECT_LE((matrix_exp_hermitian(oracle::pauli('Z'), kPi) + ComplexMatrix::Identity(2, 2)).norm(), 1e-14);
}

TEST(MatrixExp, MatchesTaylorOracle) {
  std::mt19937_64 rng(2);
  const ComplexMatrix h = oracle::random_hermitian(rng, 4);
  EXPECT_LE(oracle::spectral_norm(matrix_exp_hermitian(h, 0.7) - oracle::taylor_exp(h, 0.7)), 1e-10);
}

TEST(MatrixExp, UnitaryNormOne) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix u = matrix_exp_hermitian(oracle::random_hermitian(rng, 12, 3.0), 1.3);
    EXPECT_NEAR(operator_norm(u), 1.0, 1e-10);
    EXPECT_LE(unitarity_defect(u), 1e-12);
  }
}

TEST(PrincipalLog, IdentityGivesZero) {
  const auto r = principal_log_hamiltonian(ComplexMatrix::Identity(3, 3), 1.0);
  EXPECT_LE(r.hamiltonian.norm(), 1e-14);
  EXPECT_FALSE(r.branch_ambiguous);
}

TEST(PrincipalLog, MinusIdentityFlagsBranch) {
  const auto r = principal_log_hamiltonian(-ComplexMatrix::Identity(2, 2), 1.0);
  EXPECT_LE((r.hamiltonian - kPi * ComplexMatrix::Identity(2, 2)).norm(), 1e-12);
  EXPECT_TRUE(r.branch_ambiguous);
}

TEST(PrincipalLog, RoundTripBelowCut) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix h = oracle::random_hermitian(rng, 8);
    const double dt = 0.5;
    h *= (3.0 / dt) / oracle::spectral_norm(h) * (0.5 + 0.05 * trial);  // ||H|| dt <= 2.85 < pi
    const auto r = principal_log_hamiltonian(matrix_exp_hermitian(h, dt), dt);
    EXPECT_LE(oracle::spectral_norm(r.hamiltonian - h), 1e-8);
    EXPECT_LE(oracle::spectral_norm(matrix_exp_hermitian(r.hamiltonian, dt) - oracle::taylor_exp(h, dt)), 1e-8);
  }
}

TEST(OperatorNorm, TrivialCases) {
  EXPECT_NEAR(operator_norm(ComplexMatrix::Identity(5, 5)), 1.0, 1e-12);
  EXPECT_NEAR(operator_norm(diag2(3.0, -5.0)), 5.0, 1e-12);
}

TEST(OperatorNorm, TransverseFieldN8IsEight) {
  EXPECT_NEAR(operator_norm(oracle::tfim_x(8)), 8.0, 1e-10);
}

TEST(OperatorNorm, MatchesSvdOracle) {
  std::mt19937_64 rng(12);
  ComplexMatrix m(20, 20);
  std::normal_distribution<double> g;
  for (Index i = 0; i < 20; ++i)
    for (Index j = 0; j < 20; ++j) m(i, j) = cplx(g(rng), g(rng));
  EXPECT_NEAR(operator_norm(m), oracle::spectral_norm(m), 1e-10 * oracle::spectral_norm(m));
}

TEST(StateVector, RejectsUnnormalized) {
  ComplexVector v = ComplexVector::Ones(2);
  EXPECT_THROW(StateVector{v}, NumericalError);
  EXPECT_NEAR(StateVector::normalized(v).amplitudes().norm(), 1.0, 1e-15);
  EXPECT_THROW(StateVector::normalized(ComplexVector::Zero(3)), NumericalError);
}

TEST(ExpmAction, MatchesDenseExponential) {
  std::mt19937_64 rng(13);
  const ComplexMatrix h = oracle::random_hermitian(rng, 16, 2.0);
  ComplexVector v = ComplexVector::Zero(16);
  v(3) = 1.0;
  const ComplexVector got = expm_action(to_sparse(h), 2.3, v);
  EXPECT_LE((got - oracle::taylor_exp(h, 2.3) * v).norm(), 1e-12);
}

}  // namespace
}  // namespace dasim
