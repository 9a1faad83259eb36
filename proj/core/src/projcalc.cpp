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

#include "dasim/projcalc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dasim {
namespace {

ProjectorFrame frame_at(const AdiabaticPath& path, double s, double gap_tol) {
  if (!(s >= 0.0 && s <= 1.0)) throw NumericalError(ErrorCode::kOutOfRange, "s outside [0, 1]");
  try {
    return projector_frame(HermitianOperator(path.matrix_at(s)), gap_tol);
  } catch (const NumericalError& e) {
    if (e.code() == ErrorCode::kDegenerateGround) throw NumericalError(ErrorCode::kGapClosure, e.what());
    throw;
  }
}

ComplexMatrix shifted_hamiltonian(const AdiabaticPath& path, double s) {
  const ComplexMatrix h = path.matrix_at(s);
  const double e0 = hermitian_eigenvalues(h)(0);
  return h - e0 * ComplexMatrix::Identity(h.rows(), h.cols());
}

// Evolution from `from` to `to` (later times leftmost), midpoint rule.
ComplexMatrix segment_propagator(const AdiabaticPath& path, double total_time, double from, double to, int count) {
  const Index n = path.dim();
  ComplexMatrix u = ComplexMatrix::Identity(n, n);
  const double h = (to - from) / count;
  if (h == 0.0) return u;
  for (int m = 0; m < count; ++m) {
    u = matrix_exp_hermitian(shifted_hamiltonian(path, from + (m + 0.5) * h), total_time * h) * u;
  }
  return u;
}

}  // namespace

ProjectorFrame projector_frame(const HermitianOperator& h, double gap_tol) {
  const SpectralDecomposition spec = hermitian_eig(h.matrix());
  const Index n = spec.dim();
  if (n < 2) throw NumericalError(ErrorCode::kInvalidArgument, "projector_frame needs dimension >= 2");
  ProjectorFrame out;
  out.ground_energy = spec.eigenvalues(0);
  out.gap = spec.eigenvalues(1) - spec.eigenvalues(0);
  if (!(out.gap > gap_tol)) {
    std::ostringstream msg;
    msg << "ground state is degenerate (gap " << out.gap << ")";
    throw NumericalError(ErrorCode::kDegenerateGround, msg.str());
  }
  const ComplexVector ground = spec.eigenvectors.col(0);
  out.projector = ground * ground.adjoint();
  RealVector inv = RealVector::Zero(n);
  for (Index k = 1; k < n; ++k) inv(k) = 1.0 / (spec.eigenvalues(k) - out.ground_energy);
  out.pseudo_inverse = spec.eigenvectors * inv.cast<cplx>().asDiagonal() * spec.eigenvectors.adjoint();
  out.shifted = h.matrix() - out.ground_energy * ComplexMatrix::Identity(n, n);
  return out;
}

ProjectorInvariants check_projector_invariants(const ProjectorFrame& f) {
  const Index n = f.projector.rows();
  const ComplexMatrix& p = f.projector;
  const ComplexMatrix& g = f.pseudo_inverse;
  const ComplexMatrix complement = ComplexMatrix::Identity(n, n) - p;
  ProjectorInvariants out;
  out.idempotence = operator_norm(p * p - p);
  out.hermiticity = operator_norm(p - p.adjoint());
  out.annihilation = std::max(operator_norm(g * p), operator_norm(p * g));
  out.inverse = std::max(operator_norm(g * f.shifted - complement), operator_norm(f.shifted * g - complement));
  return out;
}

ComplexMatrix shifted_derivative(const AdiabaticPath& path, double s, const ProjectorFrame& frame) {
  const ComplexMatrix raw = path.schedule().first(s) * path.difference();
  const cplx e0_slope = (frame.projector * raw).trace();
  return raw - e0_slope.real() * ComplexMatrix::Identity(raw.rows(), raw.cols());
}

DerivativeResiduals verify_derivative_identities(const AdiabaticPath& path, double s, double h) {
  if (!(h > 0.0)) throw NumericalError(ErrorCode::kInvalidArgument, "verify_derivative_identities: h must be positive");
  if (s - h < 0.0 || s + h > 1.0) {
    throw NumericalError(ErrorCode::kOutOfRange, "verify_derivative_identities: [s-h, s+h] must lie in [0, 1]");
  }
  const ProjectorFrame mid = frame_at(path, s, 1e-6);
  const ProjectorFrame lo = frame_at(path, s - h, 1e-6);
  const ProjectorFrame hi = frame_at(path, s + h, 1e-6);
  const ComplexMatrix dh = shifted_derivative(path, s, mid);
  const ComplexMatrix& p = mid.projector;
  const ComplexMatrix& g = mid.pseudo_inverse;
  const ComplexMatrix g2 = g * g;
  const ComplexMatrix p_closed = -g * dh * p - p * dh * g;
  const ComplexMatrix g_closed = p * dh * g2 - g * dh * g + g2 * dh * p;
  const ComplexMatrix p_fd = (hi.projector - lo.projector) / (2.0 * h);
  const ComplexMatrix g_fd = (hi.pseudo_inverse - lo.pseudo_inverse) / (2.0 * h);
  return {operator_norm(p_fd - p_closed), operator_norm(g_fd - g_closed)};
}

double commutator_norm(const AdiabaticPath& path, double s) {
  const ProjectorFrame f = frame_at(path, s, 1e-9);
  const ComplexMatrix dh = shifted_derivative(path, s, f);
  const ComplexMatrix inner = dh * f.projector * dh;
  return operator_norm(f.pseudo_inverse * inner - inner * f.pseudo_inverse);
}

double two_level_commutator_check(const AdiabaticPath& path, double s) {
  if (path.dim() != 2) {
    throw NumericalError(ErrorCode::kWrongDimension,
                         "two_level_commutator_check needs dimension 2, got " + std::to_string(path.dim()));
  }
  return commutator_norm(path, s);
}

ComplexMatrix tail_propagator(const AdiabaticPath& path, double total_time, double s, int substeps) {
  if (!(s >= 0.0 && s <= 1.0)) throw NumericalError(ErrorCode::kOutOfRange, "tail_propagator: s outside [0, 1]");
  const int count = std::max(1, static_cast<int>(std::ceil((1.0 - s) * substeps)));
  return segment_propagator(path, total_time, s, 1.0, count);
}

double propagator_derivative_residual(const AdiabaticPath& path, double total_time, double s, double h,
                                      int substeps) {
  if (!(h > 0.0) || s - h < 0.0 || s + h > 1.0) {
    throw NumericalError(ErrorCode::kOutOfRange, "propagator_derivative_residual: [s-h, s+h] outside [0, 1]");
  }
  // Share the long tail so only the two short segments differ between samples.
  const ComplexMatrix a_hi = tail_propagator(path, total_time, s + h, substeps);
  const ComplexMatrix a = a_hi * segment_propagator(path, total_time, s, s + h, 64);
  const ComplexMatrix a_lo = a * segment_propagator(path, total_time, s - h, s, 64);
  const ComplexMatrix derivative = (a_hi - a_lo) / (2.0 * h);
  return operator_norm(derivative - cplx(0.0, total_time) * a * shifted_hamiltonian(path, s));
}

}  // namespace dasim
