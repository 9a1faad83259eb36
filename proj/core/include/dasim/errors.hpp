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

#include <span>
#include <utility>
#include <vector>

#include "dasim/evolve.hpp"
#include "dasim/linalg.hpp"
#include "dasim/model.hpp"

namespace dasim {

/// sqrt(1 - |<phi|psi>|^2), clamped to [0, 1].
double fidelity_error(const StateVector& phi, const StateVector& psi);

struct GroundState {
  double energy = 0.0;
  double gap = 0.0;  // E_1 - E_0
  ComplexVector state;
};

/// Lowest eigenvector of h in the largest-entry gauge. Throws
/// DegenerateEndpoint when E_1 - E_0 <= gap_tol.
GroundState ground_state(const ComplexMatrix& h, double gap_tol = 1e-9);

struct ErrorTriplet {
  double eps_tot = 0.0;    // A_tro |psi_i> against |psi_f>
  double eps_adb = 0.0;    // A |psi_i> against |psi_f>
  double eps_tro = 0.0;    // A_tro |psi_i> against A |psi_i>
  double norm_dist = 0.0;  // ||A_d - A_tro||
  double eps_adb_d = 0.0;  // A_d |psi_i> against |psi_f>
  double eps_tro_d = 0.0;  // A_tro |psi_i> against A_d |psi_i>
  double total_time = 0.0;
  int steps = 0;
  double dt = 0.0;
  int exact_substeps = 0;
};

struct TripletOptions {
  ExactOptions exact{};
  /// Builds A_d for norm_dist, eps_adb_d and eps_tro_d.
  bool with_discrete = true;
  /// Optional grid spectra shared across a sweep over T.
  const std::vector<SpectralDecomposition>* spectra = nullptr;
};

ErrorTriplet error_triplet(const EvolutionSpec& spec, const TripletOptions& options = {});

struct BoundReport {
  double boundary_initial = 0.0;
  double boundary_final = 0.0;
  double integral_term = 0.0;
  double total = 0.0;
  int quad_points = 0;
};

/// Adiabatic-theorem bound: ||H'(0)|| / (T gap(0)^2) + ||H'(1)|| / (T gap(1)^2)
/// + (1/T) int_0^1 [7 ||H'||^2 / gap^3 + ||H''|| / gap^2] ds, composite Simpson.
BoundReport adiabatic_bound(const AdiabaticPath& path, double total_time, int quad_points = 201);

/// Doubles the Simpson node count from `quad_points` until the total changes
/// by less than `rel_tol` relative.
BoundReport adiabatic_bound_converged(const AdiabaticPath& path, double total_time, double rel_tol = 1e-8,
                                      int quad_points = 201, int max_points = 1 << 14);

/// Negative least-squares slope of log(eps) against log(T).
double scaling_index(std::span<const std::pair<double, double>> samples);

}  // namespace dasim
