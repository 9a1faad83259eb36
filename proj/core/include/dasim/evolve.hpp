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
#include <string>
#include <string_view>
#include <vector>

#include "dasim/linalg.hpp"
#include "dasim/model.hpp"

namespace dasim {

enum class GridPolicy {
  kEndpoints,  // s_j = (j-1)/(L-1), both ends included
  kLeft,       // s_j = (j-1)/L
  kMidpoint,   // s_j = (j-1/2)/L
};

std::string_view to_string(GridPolicy policy);
GridPolicy parse_grid_policy(std::string_view name);

/// Sample points s_1..s_L. For L = 1 the endpoints grid is {0}.
std::vector<double> grid_points(GridPolicy policy, int steps);

/// One Trotter layer H_k(s) = weight(s) * op. The spectral data of `op` is
/// computed once and shared between copies.
class TrotterLayer {
 public:
  TrotterLayer(std::string label, const HermitianOperator& op, std::function<double(double)> weight);

  const std::string& label() const { return cache_->label; }
  const HermitianOperator& op() const { return cache_->op; }
  double weight(double s) const { return cache_->weight(s); }
  bool diagonal() const { return cache_->diagonal; }

  /// exp(-i weight(s) dt op) as a dense matrix.
  ComplexMatrix exponential(double s, double dt) const;

  /// a <- exp(-i weight(s) dt op) a.
  void apply_left(double s, double dt, ComplexMatrix& a) const;

 private:
  struct Cache {
    std::string label;
    HermitianOperator op;
    std::function<double(double)> weight;
    bool diagonal = false;
    RealVector diag;
    SpectralDecomposition spectrum;
  };
  std::shared_ptr<const Cache> cache_;
};

/// [(1 - p(s)) H_i, p(s) H_f], applied in that order within a step.
std::vector<TrotterLayer> default_layers(const AdiabaticPath& path);

class EvolutionSpec {
 public:
  EvolutionSpec(std::shared_ptr<const AdiabaticPath> path, double total_time, int steps,
                GridPolicy grid = GridPolicy::kEndpoints);
  EvolutionSpec(std::shared_ptr<const AdiabaticPath> path, double total_time, int steps, GridPolicy grid,
                std::vector<TrotterLayer> layers);

  const AdiabaticPath& path() const { return *path_; }
  const std::shared_ptr<const AdiabaticPath>& path_ptr() const { return path_; }
  double total_time() const { return total_time_; }
  int steps() const { return steps_; }
  double dt() const { return total_time_ / steps_; }
  GridPolicy grid() const { return grid_; }
  const std::vector<TrotterLayer>& layers() const { return layers_; }
  const std::vector<double>& samples() const { return samples_; }

 private:
  std::shared_ptr<const AdiabaticPath> path_;
  double total_time_;
  int steps_;
  GridPolicy grid_;
  std::vector<TrotterLayer> layers_;
  std::vector<double> samples_;
};

enum class Method { kExact, kDiscrete, kTrotter, kStep };

std::string_view to_string(Method method);

struct UnitaryOperator {
  ComplexMatrix matrix;
  Method method = Method::kExact;
  double total_time = 0.0;
  int steps = 0;
  GridPolicy grid = GridPolicy::kEndpoints;
  int substeps = 0;  // exact_evolution only: final midpoint substep count

  ComplexVector apply(const ComplexVector& v) const { return matrix * v; }
};

enum class ExactScheme {
  kMagnus4,   // fourth-order commutator-free Magnus, two exponentials per substep
  kMidpoint,  // one exponential at each substep midpoint
};

struct ExactOptions {
  double tol = 1e-10;
  ExactScheme scheme = ExactScheme::kMagnus4;
  int initial_substeps = 64;
  int max_substeps = 1 << 20;
};

/// Time-ordered exp(-iT int H ds) as a product of short-time propagators,
/// doubling the substep count until successive results agree in spectral norm.
UnitaryOperator exact_evolution(const EvolutionSpec& spec, const ExactOptions& options = {});

struct StateEvolution {
  ComplexVector state;
  int substeps = 0;
  double last_change = 0.0;
};

/// A|psi> for the exact time-ordered evolution using the fourth-order
/// commutator-free Magnus integrator on the sparse generators. The substep
/// count doubles until successive states agree to `options.tol`; the scheme
/// field is ignored.
StateEvolution exact_state_evolution(const AdiabaticPath& path, double total_time, const ComplexVector& psi,
                                     const ExactOptions& options = {});

/// Spectral decompositions of H(s_j) for every grid point. These depend on the
/// path and grid only, so sweeps over T can share them.
std::vector<SpectralDecomposition> grid_spectra(const EvolutionSpec& spec, int threads = 1);

/// A_d = U_L ... U_1 with U_j = exp(-i H(s_j) dt).
UnitaryOperator discrete_evolution(const EvolutionSpec& spec);
UnitaryOperator discrete_evolution(const EvolutionSpec& spec, const std::vector<SpectralDecomposition>& spectra);

/// A_tro = prod_j prod_k exp(-i H_k(s_j) dt), layer 1 acting first.
UnitaryOperator trotter_evolution(const EvolutionSpec& spec);

/// prod_k exp(-i H_k(s) dt) for a single step.
UnitaryOperator trotter_step_unitary(const EvolutionSpec& spec, double s);

struct EffectiveHamiltonian {
  HermitianOperator hamiltonian;
  bool branch_ambiguous = false;
  double distance_to_cut = 0.0;
};

/// i log(U_tro(s, dt)) / dt on the principal branch.
EffectiveHamiltonian effective_hamiltonian(const EvolutionSpec& spec, double s);

}  // namespace dasim
