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

#include "dasim/linalg.hpp"
#include "dasim/model.hpp"

namespace dasim {

/// Ground projector P and reduced resolvent G = sum_{k>0} P_k / (E_k - E_0) of
/// the shifted Hamiltonian H - E_0 I.
struct ProjectorFrame {
  ComplexMatrix projector;
  ComplexMatrix pseudo_inverse;
  ComplexMatrix shifted;   // H - E_0 I, annihilates the ground state
  double ground_energy = 0.0;
  double gap = 0.0;
};

ProjectorFrame projector_frame(const HermitianOperator& h, double gap_tol = 1e-9);

struct ProjectorInvariants {
  double idempotence = 0.0;   // ||P^2 - P||
  double hermiticity = 0.0;   // ||P - P^dagger||
  double annihilation = 0.0;  // max(||GP||, ||PG||)
  double inverse = 0.0;       // max(||GH - (I - P)||, ||HG - (I - P)||)
};

ProjectorInvariants check_projector_invariants(const ProjectorFrame& frame);

/// H'(s) - <0|H'(s)|0> I, the derivative of the shifted Hamiltonian.
ComplexMatrix shifted_derivative(const AdiabaticPath& path, double s, const ProjectorFrame& frame);

struct DerivativeResiduals {
  double projector = 0.0;        // || central-difference P' - (-G H' P - P H' G) ||
  double pseudo_inverse = 0.0;   // || central-difference G' - (P H' G^2 - G H' G + G^2 H' P) ||
};

/// Central differences with step h against the closed-form derivatives.
DerivativeResiduals verify_derivative_identities(const AdiabaticPath& path, double s, double h);

/// ||[G, H' P H']|| at s; defined for any dimension.
double commutator_norm(const AdiabaticPath& path, double s);

/// Same quantity restricted to two-level paths. Throws WrongDimension otherwise.
double two_level_commutator_check(const AdiabaticPath& path, double s);

/// Evolution from s to 1: A(s) = T exp(-i T int_s^1 H), shifted H, midpoint
/// product with `substeps` steps per unit length.
ComplexMatrix tail_propagator(const AdiabaticPath& path, double total_time, double s, int substeps);

/// || central-difference A'(s) - i T A(s) H(s) || with step h, shifted H.
double propagator_derivative_residual(const AdiabaticPath& path, double total_time, double s, double h,
                                      int substeps = 1 << 14);

}  // namespace dasim
