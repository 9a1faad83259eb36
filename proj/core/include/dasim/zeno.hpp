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

#include <functional>
#include <memory>
#include <string_view>
#include <vector>

#include "dasim/evolve.hpp"
#include "dasim/linalg.hpp"
#include "dasim/model.hpp"

namespace dasim {

enum class FamilyKind { kHermitianPath, kTrotterUnitary };

std::string_view to_string(FamilyKind kind);

/// A one-parameter family of operators on s in [0, 1], either Hermitian
/// (diagonalized directly) or unitary (diagonalized by unitary_eig), and the
/// state the continuation starts from at s = 0.
struct OperatorFamily {
  FamilyKind kind = FamilyKind::kHermitianPath;
  std::function<ComplexMatrix(double)> evaluate;
  ComplexVector initial_state;
  double dt = 0.0;
};

/// H(s) itself, starting from the ground state of H(0).
OperatorFamily hermitian_family(std::shared_ptr<const AdiabaticPath> path);

/// The single-step Trotter unitary U_tro(s, dt) of `spec`, whose eigenbasis is
/// that of the effective Hamiltonian. Starts from the ground state of H(0).
OperatorFamily trotter_family(const EvolutionSpec& spec);

struct ZenoTrace {
  FamilyKind kind = FamilyKind::kHermitianPath;
  double dt = 0.0;
  double threshold = 0.99;
  std::vector<double> s;              // s_0..s_steps
  std::vector<double> overlaps;       // |<phi_j|phi_{j+1}>|^2, j = 0..steps-1
  std::vector<double> nearest_gap;    // level (or phase) distance from the tracked state to its nearest neighbor
  double min_overlap = 1.0;
  int argmin_step = -1;
  int first_failure = -1;             // first j with overlap <= threshold, -1 if none
  bool pass = true;
};

/// Follows the state of maximal overlap through s_j = j / steps. When the best
/// eigenvector belongs to a (near) degenerate block, the state is projected
/// onto the whole block and the captured weight is recorded as the overlap.
ZenoTrace near_degeneracy_test(const OperatorFamily& family, int steps, double threshold = 0.99,
                               double cluster_tol = 1e-6);

enum class CriticalOutcome { kFound, kAllPass, kAllFail };

struct CriticalStepResult {
  std::vector<double> dt;
  std::vector<bool> pass;
  std::vector<double> min_overlap;
  std::vector<ZenoTrace> traces;
  CriticalOutcome outcome = CriticalOutcome::kFound;
  double last_pass = 0.0;      // largest passing dt below the first failure
  double first_fail = 0.0;
  bool non_monotone = false;   // a pass occurs above the first failure

  /// Midpoint of last_pass and first_fail. Throws AllPass / AllFail.
  double critical_dt() const;
  /// Half the bracketing interval.
  double resolution() const { return 0.5 * (first_fail - last_pass); }
};

/// Runs the near-degeneracy test for every dt on an ascending grid.
CriticalStepResult critical_step_search(const std::function<OperatorFamily(double)>& family_at_dt,
                                        const std::vector<double>& dt_grid, int steps, double threshold = 0.99,
                                        int threads = 1);

}  // namespace dasim
