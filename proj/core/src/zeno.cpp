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

#include "dasim/zeno.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dasim/parallel.hpp"

namespace dasim {
namespace {

struct Eigenbasis {
  RealVector levels;  // energies, or eigenphases in (-pi, pi]
  ComplexMatrix vectors;
  bool circular = false;
};

Eigenbasis diagonalize(const OperatorFamily& family, double s) {
  const ComplexMatrix m = family.evaluate(s);
  if (family.kind == FamilyKind::kHermitianPath) {
    SpectralDecomposition d = hermitian_eig(m);
    return {std::move(d.eigenvalues), std::move(d.eigenvectors), false};
  }
  UnitarySpectrum u = unitary_eig(m);
  return {std::move(u.phases), std::move(u.eigenvectors), true};
}

double level_distance(double a, double b, bool circular) {
  const double d = std::abs(a - b);
  return circular ? std::min(d, 2.0 * kPi - d) : d;
}

double nearest_neighbor(const Eigenbasis& b, Index k) {
  double best = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < b.levels.size(); ++i) {
    if (i != k) best = std::min(best, level_distance(b.levels(i), b.levels(k), b.circular));
  }
  return best;
}

// Picks the best-matching eigenvector; returns the captured weight and the new state.
std::pair<double, ComplexVector> continue_state(const Eigenbasis& b, const ComplexVector& phi, double cluster_tol,
                                                Index& chosen) {
  const ComplexVector amps = b.vectors.adjoint() * phi;
  Index best = 0;
  amps.cwiseAbs2().maxCoeff(&best);
  chosen = best;
  std::vector<Index> block;
  for (Index i = 0; i < b.levels.size(); ++i) {
    if (level_distance(b.levels(i), b.levels(best), b.circular) < cluster_tol) block.push_back(i);
  }
  ComplexVector next = ComplexVector::Zero(phi.size());
  double weight = 0.0;
  for (Index i : block) {
    next += amps(i) * b.vectors.col(i);
    weight += std::norm(amps(i));
  }
  return {std::clamp(weight, 0.0, 1.0), next / std::sqrt(weight)};
}

}  // namespace

std::string_view to_string(FamilyKind kind) {
  return kind == FamilyKind::kHermitianPath ? "hermitian-path" : "trotter-unitary";
}

OperatorFamily hermitian_family(std::shared_ptr<const AdiabaticPath> path) {
  if (!path) throw NumericalError(ErrorCode::kInvalidArgument, "hermitian_family: null path");
  OperatorFamily f;
  f.kind = FamilyKind::kHermitianPath;
  f.initial_state = hermitian_eig(path->initial().matrix()).eigenvectors.col(0);
  f.evaluate = [path](double s) { return path->matrix_at(s); };
  return f;
}

OperatorFamily trotter_family(const EvolutionSpec& spec) {
  OperatorFamily f;
  f.kind = FamilyKind::kTrotterUnitary;
  f.dt = spec.dt();
  f.initial_state = hermitian_eig(spec.path().initial().matrix()).eigenvectors.col(0);
  f.evaluate = [spec](double s) { return trotter_step_unitary(spec, s).matrix; };
  return f;
}

ZenoTrace near_degeneracy_test(const OperatorFamily& family, int steps, double threshold, double cluster_tol) {
  if (steps < 1) throw NumericalError(ErrorCode::kInvalidArgument, "near_degeneracy_test: steps < 1");
  if (!family.evaluate) throw NumericalError(ErrorCode::kInvalidArgument, "near_degeneracy_test: empty family");
  ZenoTrace trace;
  trace.kind = family.kind;
  trace.dt = family.dt;
  trace.threshold = threshold;
  trace.s.resize(static_cast<std::size_t>(steps) + 1);
  for (int j = 0; j <= steps; ++j) trace.s[j] = static_cast<double>(j) / steps;

  Index chosen = 0;
  Eigenbasis basis = diagonalize(family, 0.0);
  if (family.initial_state.size() != basis.vectors.rows()) {
    throw NumericalError(ErrorCode::kDimensionMismatch, "near_degeneracy_test: initial state dimension");
  }
  ComplexVector phi = continue_state(basis, family.initial_state.normalized(), cluster_tol, chosen).second;
  trace.nearest_gap.push_back(nearest_neighbor(basis, chosen));
  for (int j = 0; j < steps; ++j) {
    basis = diagonalize(family, trace.s[j + 1]);
    auto [weight, next] = continue_state(basis, phi, cluster_tol, chosen);
    trace.overlaps.push_back(weight);
    trace.nearest_gap.push_back(nearest_neighbor(basis, chosen));
    if (weight < trace.min_overlap) {
      trace.min_overlap = weight;
      trace.argmin_step = j;
    }
    if (trace.first_failure < 0 && !(weight > threshold)) trace.first_failure = j;
    phi = std::move(next);
  }
  trace.pass = trace.min_overlap > threshold;
  return trace;
}

double CriticalStepResult::critical_dt() const {
  if (outcome == CriticalOutcome::kAllPass) {
    throw NumericalError(ErrorCode::kAllPass, "every dt on the grid passes; critical dt is above the grid");
  }
  if (outcome == CriticalOutcome::kAllFail) {
    throw NumericalError(ErrorCode::kAllFail, "no dt on the grid passes below the first failure");
  }
  return 0.5 * (last_pass + first_fail);
}

CriticalStepResult critical_step_search(const std::function<OperatorFamily(double)>& family_at_dt,
                                        const std::vector<double>& dt_grid, int steps, double threshold,
                                        int threads) {
  if (dt_grid.empty()) throw NumericalError(ErrorCode::kInvalidArgument, "critical_step_search: empty grid");
  for (std::size_t i = 1; i < dt_grid.size(); ++i) {
    if (!(dt_grid[i] > dt_grid[i - 1])) {
      throw NumericalError(ErrorCode::kInvalidArgument, "critical_step_search: dt grid must be ascending");
    }
  }
  CriticalStepResult out;
  out.dt = dt_grid;
  out.traces.resize(dt_grid.size());
  parallel_for(dt_grid.size(), threads, [&](std::size_t i) {
    out.traces[i] = near_degeneracy_test(family_at_dt(dt_grid[i]), steps, threshold);
  });
  for (const auto& t : out.traces) {
    out.pass.push_back(t.pass);
    out.min_overlap.push_back(t.min_overlap);
  }
  const auto first_fail = std::find(out.pass.begin(), out.pass.end(), false);
  if (first_fail == out.pass.end()) {
    out.outcome = CriticalOutcome::kAllPass;
    out.last_pass = dt_grid.back();
    return out;
  }
  const auto idx = static_cast<std::size_t>(first_fail - out.pass.begin());
  out.first_fail = dt_grid[idx];
  out.non_monotone = std::find(first_fail, out.pass.end(), true) != out.pass.end();
  if (idx == 0) {
    out.outcome = CriticalOutcome::kAllFail;
    return out;
  }
  out.last_pass = dt_grid[idx - 1];
  out.outcome = CriticalOutcome::kFound;
  return out;
}

}  // namespace dasim
