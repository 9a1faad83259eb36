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

#pragma once

// Dense complex kernels shared by every other module: Hermitian and unitary
// eigendecomposition with a reproducible gauge, exp(-iHt), the principal
// logarithm of a unitary, spectral norms, and Krylov-free exp actions on
// vectors for sparse generators.

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "dasim/exceptions.hpp"

namespace dasim {

using cplx = std::complex<double>;
using Index = Eigen::Index;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<cplx>;

inline constexpr double kPi = 3.14159265358979323846;

struct LinalgTolerances {
  double hermitian = 1e-10;           // max-entry deviation from H = H^dagger
  double unitary = 1e-8;              // max-entry deviation from U^dagger U = I
  double degenerate_cluster = 1e-9;   // eigenvalues closer than this share a cluster
  double gauge_tie = 1e-12;           // magnitudes this close count as equal
  double branch_cut = 1e-8;           // eigenphase distance to +-pi that is flagged
  double phase_cluster = 1e-6;        // unitary_eig: refinement cluster width
};

inline constexpr LinalgTolerances kLinalgDefaults{};

enum class Gauge {
  kLargestEntryReal,   // largest-magnitude entry of each column real positive
  kParallelTransport,  // successive overlaps real nonnegative (set by gamma)
};

struct SpectralDecomposition {
  RealVector eigenvalues;       // ascending
  ComplexMatrix eigenvectors;   // columns orthonormal
  Gauge gauge = Gauge::kLargestEntryReal;

  Index dim() const { return eigenvalues.size(); }

  ComplexMatrix reconstruct() const;

  /// exp(-i H t) assembled from the stored decomposition.
  ComplexMatrix exponential(double t) const;
};

struct UnitarySpectrum {
  RealVector phases;            // U = V diag(exp(-i phase)) V^dagger, phases in (-pi, pi], ascending
  ComplexMatrix eigenvectors;
};

struct LogResult {
  ComplexMatrix hamiltonian;
  bool branch_ambiguous = false;
  double distance_to_cut = 0.0;  // min over eigenphases of pi - |phase|
};

/// Normalized pure state. Construction checks the 2-norm.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(ComplexVector amplitudes, double tol = 1e-12);

  /// Rescales to unit norm; rejects the zero vector.
  static StateVector normalized(ComplexVector amplitudes);

  const ComplexVector& amplitudes() const { return amplitudes_; }
  Index dim() const { return amplitudes_.size(); }

 private:
  ComplexVector amplitudes_;
};

double hermiticity_defect(const ComplexMatrix& m);
double unitarity_defect(const ComplexMatrix& m);

void require_square(const ComplexMatrix& m, const char* what);
void require_hermitian(const ComplexMatrix& m, double tol, const char* what);
void require_unitary(const ComplexMatrix& m, double tol, const char* what);

/// Rephases each column so its largest-magnitude entry is real positive.
/// Ties within `tie_tol` go to the lowest row index.
void fix_largest_entry_gauge(ComplexMatrix& vectors, double tie_tol = 1e-12);

SpectralDecomposition hermitian_eig(const ComplexMatrix& h,
                                    const LinalgTolerances& tol = kLinalgDefaults);

/// Eigenvalues only, ascending.
RealVector hermitian_eigenvalues(const ComplexMatrix& h);

UnitarySpectrum unitary_eig(const ComplexMatrix& u,
                            const LinalgTolerances& tol = kLinalgDefaults);

/// exp(-i H t) for Hermitian H.
ComplexMatrix matrix_exp_hermitian(const ComplexMatrix& h, double t,
                                   const LinalgTolerances& tol = kLinalgDefaults);

/// Hermitian H with exp(-i H dt) = U, eigenphases taken in (-pi, pi].
LogResult principal_log_hamiltonian(const ComplexMatrix& u, double dt,
                                    const LinalgTolerances& tol = kLinalgDefaults);

/// Largest singular value.
double operator_norm(const ComplexMatrix& m);

/// Max absolute column sum; an upper bound on the spectral norm of a
/// Hermitian matrix.
double one_norm(const SparseMatrix& m);

SparseMatrix to_sparse(const ComplexMatrix& m, double drop_tol = 0.0);

/// exp(-i t A) v by scaled Taylor series. `apply` computes A x for a Hermitian
/// A whose spectral norm is at most `norm_bound`.
template <class MatVec>
ComplexVector expm_action(MatVec&& apply, double norm_bound, double t,
                          const ComplexVector& v) {
  const double scale = std::abs(t) * norm_bound;
  const int substeps = std::max(1, static_cast<int>(std::ceil(scale)));
  const cplx factor(0.0, -t / substeps);
  ComplexVector result = v;
  ComplexVector term(v.size());
  for (int step = 0; step < substeps; ++step) {
    term = result;
    ComplexVector sum = result;
    const double base = result.norm();
    for (int k = 1; k < 80; ++k) {
      term = apply(term);
      term *= factor / static_cast<double>(k);
      sum += term;
      if (term.norm() <= std::numeric_limits<double>::epsilon() * 0.25 * base) {
        break;
      }
    }
    result = std::move(sum);
  }
  return result;
}

ComplexVector expm_action(const SparseMatrix& h, double t, const ComplexVector& v);

}  // namespace dasim
