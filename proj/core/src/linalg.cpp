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

#include "dasim/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <numeric>
#include <sstream>
#include <vector>

namespace dasim {
namespace {

// Orthonormalizes the columns [begin, end) against each other in place.
void orthonormalize_block(ComplexMatrix& v, Index begin, Index end) {
  for (Index c = begin; c < end; ++c) {
    for (Index p = begin; p < c; ++p) {
      const cplx proj = v.col(p).dot(v.col(c));
      v.col(c) -= proj * v.col(p);
    }
    v.col(c).normalize();
  }
}

std::vector<std::pair<Index, Index>> clusters(const RealVector& sorted_values, double width) {
  std::vector<std::pair<Index, Index>> out;
  Index begin = 0;
  for (Index i = 1; i <= sorted_values.size(); ++i) {
    if (i == sorted_values.size() || sorted_values(i) - sorted_values(i - 1) >= width) {
      out.emplace_back(begin, i);
      begin = i;
    }
  }
  return out;
}

double wrap_phase(double theta) {
  // map into (-pi, pi]
  theta = std::remainder(theta, 2.0 * kPi);
  if (theta <= -kPi) theta += 2.0 * kPi;
  return theta;
}

}  // namespace

StateVector::StateVector(ComplexVector amplitudes, double tol)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) {
    throw NumericalError(ErrorCode::kInvalidArgument, "empty state vector");
  }
  const double norm = amplitudes_.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > tol) {
    std::ostringstream msg;
    msg << "state norm " << norm << " deviates from 1 by more than " << tol;
    throw NumericalError(ErrorCode::kNotNormalized, msg.str());
  }
}

StateVector StateVector::normalized(ComplexVector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw NumericalError(ErrorCode::kNotNormalized, "cannot normalize a zero or non-finite vector");
  }
  amplitudes /= norm;
  return StateVector(std::move(amplitudes), 1e-12);
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<cplx>().asDiagonal() * eigenvectors.adjoint();
}

ComplexMatrix SpectralDecomposition::exponential(double t) const {
  ComplexVector phases(dim());
  for (Index k = 0; k < dim(); ++k) {
    phases(k) = std::polar(1.0, -eigenvalues(k) * t);
  }
  return eigenvectors * phases.asDiagonal() * eigenvectors.adjoint();
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_defect(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream msg;
    msg << what << ": expected a nonempty square matrix, got " << m.rows() << "x" << m.cols();
    throw NumericalError(ErrorCode::kDimensionMismatch, msg.str());
  }
  if (!m.allFinite()) {
    throw NumericalError(ErrorCode::kInvalidArgument, std::string(what) + ": non-finite entries");
  }
}

void require_hermitian(const ComplexMatrix& m, double tol, const char* what) {
  require_square(m, what);
  const double defect = hermiticity_defect(m);
  if (defect > tol) {
    std::ostringstream msg;
    msg << what << ": max |H - H^dagger| = " << defect << " exceeds " << tol;
    throw NumericalError(ErrorCode::kNotHermitian, msg.str());
  }
}

void require_unitary(const ComplexMatrix& m, double tol, const char* what) {
  require_square(m, what);
  const double defect = unitarity_defect(m);
  if (defect > tol) {
    std::ostringstream msg;
    msg << what << ": max |U^dagger U - I| = " << defect << " exceeds " << tol;
    throw NumericalError(ErrorCode::kNotUnitary, msg.str());
  }
}

void fix_largest_entry_gauge(ComplexMatrix& vectors, double tie_tol) {
  for (Index c = 0; c < vectors.cols(); ++c) {
    auto col = vectors.col(c);
    const double largest = col.cwiseAbs().maxCoeff();
    if (largest == 0.0) continue;
    Index pivot = 0;
    while (std::abs(col(pivot)) < largest - tie_tol) ++pivot;
    const cplx z = col(pivot);
    col *= std::conj(z) / std::abs(z);
    col(pivot) = cplx(std::abs(col(pivot)), 0.0);
  }
}

SpectralDecomposition hermitian_eig(const ComplexMatrix& h, const LinalgTolerances& tol) {
  require_hermitian(h, tol.hermitian, "hermitian_eig");
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  SpectralDecomposition out;
  if (sym.imag().cwiseAbs().maxCoeff() == 0.0) {
    // Real symmetric input: the real solver is several times faster.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym.real(), Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
      throw NumericalError(ErrorCode::kConvergenceFailure, "Hermitian eigensolver did not converge");
    }
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors().cast<cplx>();
  } else {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
      throw NumericalError(ErrorCode::kConvergenceFailure, "Hermitian eigensolver did not converge");
    }
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();
  }
  for (const auto& [begin, end] : clusters(out.eigenvalues, tol.degenerate_cluster)) {
    if (end - begin > 1) orthonormalize_block(out.eigenvectors, begin, end);
  }
  fix_largest_entry_gauge(out.eigenvectors, tol.gauge_tie);
  out.gauge = Gauge::kLargestEntryReal;
  return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& h) {
  require_square(h, "hermitian_eigenvalues");
  if (h.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> real_solver(h.real(), Eigen::EigenvaluesOnly);
    if (real_solver.info() != Eigen::Success) {
      throw NumericalError(ErrorCode::kConvergenceFailure, "hermitian_eigenvalues: solver did not converge");
    }
    return real_solver.eigenvalues();
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError(ErrorCode::kConvergenceFailure, "hermitian_eigenvalues: solver did not converge");
  }
  return solver.eigenvalues();
}

UnitarySpectrum unitary_eig(const ComplexMatrix& u, const LinalgTolerances& tol) {
  require_unitary(u, tol.unitary, "unitary_eig");
  const Index n = u.rows();

  // A normal matrix shares its eigenvectors with every Hermitian function of
  // itself. cos(theta) + c sin(theta) separates most phases; clusters where it
  // does not are split by a small Schur decomposition of the compressed U.
  constexpr double kMix = 0.6180339887498949;
  const ComplexMatrix herm = 0.5 * (u + u.adjoint()) + (kMix * 0.5) * cplx(0.0, -1.0) * (u - u.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (herm + herm.adjoint()), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericalError(ErrorCode::kConvergenceFailure, "unitary_eig: Hermitian proxy did not converge");
  }
  ComplexMatrix v = solver.eigenvectors();
  for (const auto& [begin, end] : clusters(solver.eigenvalues(), tol.phase_cluster)) {
    const Index width = end - begin;
    if (width == 1) continue;
    const ComplexMatrix q = v.middleCols(begin, width);
    const ComplexMatrix compressed = q.adjoint() * u * q;
    Eigen::ComplexSchur<ComplexMatrix> schur(compressed);
    if (schur.info() != Eigen::Success) {
      throw NumericalError(ErrorCode::kConvergenceFailure, "unitary_eig: cluster Schur failed");
    }
    v.middleCols(begin, width) = q * schur.matrixU();
    orthonormalize_block(v, begin, end);
  }

  RealVector phases(n);
  for (Index k = 0; k < n; ++k) {
    const cplx lambda = v.col(k).dot(u * v.col(k));
    phases(k) = wrap_phase(-std::arg(lambda));
  }
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return phases(a) < phases(b); });

  UnitarySpectrum out;
  out.phases.resize(n);
  out.eigenvectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.phases(k) = phases(order[static_cast<std::size_t>(k)]);
    out.eigenvectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  fix_largest_entry_gauge(out.eigenvectors, tol.gauge_tie);
  return out;
}

ComplexMatrix matrix_exp_hermitian(const ComplexMatrix& h, double t, const LinalgTolerances& tol) {
  if (t == 0.0) {
    require_hermitian(h, tol.hermitian, "matrix_exp_hermitian");
    return ComplexMatrix::Identity(h.rows(), h.cols());
  }
  return hermitian_eig(h, tol).exponential(t);
}

LogResult principal_log_hamiltonian(const ComplexMatrix& u, double dt, const LinalgTolerances& tol) {
  if (!(dt > 0.0)) {
    throw NumericalError(ErrorCode::kInvalidArgument, "principal_log_hamiltonian: dt must be positive");
  }
  const UnitarySpectrum spec = unitary_eig(u, tol);
  LogResult out;
  out.distance_to_cut = kPi;
  for (Index k = 0; k < spec.phases.size(); ++k) {
    out.distance_to_cut = std::min(out.distance_to_cut, kPi - std::abs(spec.phases(k)));
  }
  out.branch_ambiguous = out.distance_to_cut < tol.branch_cut;
  out.hamiltonian = spec.eigenvectors * (spec.phases / dt).cast<cplx>().asDiagonal() *
                    spec.eigenvectors.adjoint();
  return out;
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  const ComplexMatrix gram = m.rows() >= m.cols() ? ComplexMatrix(m.adjoint() * m)
                                                   : ComplexMatrix(m * m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError(ErrorCode::kConvergenceFailure, "operator_norm: eigensolver failed");
  }
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

double one_norm(const SparseMatrix& m) {
  double best = 0.0;
  for (Index c = 0; c < m.outerSize(); ++c) {
    double sum = 0.0;
    for (SparseMatrix::InnerIterator it(m, c); it; ++it) sum += std::abs(it.value());
    best = std::max(best, sum);
  }
  return best;
}

SparseMatrix to_sparse(const ComplexMatrix& m, double drop_tol) {
  std::vector<Eigen::Triplet<cplx>> entries;
  for (Index c = 0; c < m.cols(); ++c) {
    for (Index r = 0; r < m.rows(); ++r) {
      if (std::abs(m(r, c)) > drop_tol) entries.emplace_back(r, c, m(r, c));
    }
  }
  SparseMatrix out(m.rows(), m.cols());
  out.setFromTriplets(entries.begin(), entries.end());
  out.makeCompressed();
  return out;
}

ComplexVector expm_action(const SparseMatrix& h, double t, const ComplexVector& v) {
  return expm_action([&h](const ComplexVector& x) -> ComplexVector { return h * x; },
                     one_norm(h), t, v);
}

}  // namespace dasim
