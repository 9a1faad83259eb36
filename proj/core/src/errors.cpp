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

#include "dasim/errors.hpp"

#include <cmath>
#include <sstream>

#include "dasim/quadrature.hpp"

namespace dasim {
namespace {

double fidelity_error_raw(const ComplexVector& phi, const ComplexVector& psi) {
  if (phi.size() != psi.size()) throw NumericalError(ErrorCode::kDimensionMismatch, "fidelity_error: dimension mismatch");
  const double overlap = std::norm(phi.dot(psi));
  return std::sqrt(std::clamp(1.0 - overlap, 0.0, 1.0));
}

double gap_at(const AdiabaticPath& path, double s) {
  const RealVector e = hermitian_eigenvalues(path.matrix_at(s));
  return e(1) - e(0);
}

}  // namespace

double fidelity_error(const StateVector& phi, const StateVector& psi) {
  return fidelity_error_raw(phi.amplitudes(), psi.amplitudes());
}

GroundState ground_state(const ComplexMatrix& h, double gap_tol) {
  const SpectralDecomposition spec = hermitian_eig(h);
  if (spec.dim() < 2) throw NumericalError(ErrorCode::kInvalidArgument, "ground_state needs dimension >= 2");
  const double gap = spec.eigenvalues(1) - spec.eigenvalues(0);
  if (!(gap > gap_tol)) {
    std::ostringstream msg;
    msg << "ground state is degenerate (gap " << gap << ")";
    throw NumericalError(ErrorCode::kDegenerateEndpoint, msg.str());
  }
  return {spec.eigenvalues(0), gap, spec.eigenvectors.col(0)};
}

ErrorTriplet error_triplet(const EvolutionSpec& spec, const TripletOptions& options) {
  const AdiabaticPath& path = spec.path();
  const GroundState initial = ground_state(path.initial().matrix());
  const GroundState final_gs = ground_state(path.final().matrix());

  const StateEvolution exact = exact_state_evolution(path, spec.total_time(), initial.state, options.exact);
  const UnitaryOperator tro = trotter_evolution(spec);
  const ComplexVector tro_state = tro.apply(initial.state);

  ErrorTriplet out;
  out.total_time = spec.total_time();
  out.steps = spec.steps();
  out.dt = spec.dt();
  out.exact_substeps = exact.substeps;
  out.eps_adb = fidelity_error_raw(final_gs.state, exact.state);
  out.eps_tro = fidelity_error_raw(exact.state, tro_state);
  out.eps_tot = fidelity_error_raw(final_gs.state, tro_state);
  if (options.with_discrete) {
    const UnitaryOperator disc =
        options.spectra ? discrete_evolution(spec, *options.spectra) : discrete_evolution(spec);
    const ComplexVector disc_state = disc.apply(initial.state);
    out.norm_dist = operator_norm(disc.matrix - tro.matrix);
    out.eps_adb_d = fidelity_error_raw(final_gs.state, disc_state);
    out.eps_tro_d = fidelity_error_raw(disc_state, tro_state);
  }
  return out;
}

BoundReport adiabatic_bound(const AdiabaticPath& path, double total_time, int quad_points) {
  if (!(total_time > 0.0)) throw NumericalError(ErrorCode::kInvalidArgument, "adiabatic_bound: T must be positive");
  const double diff_norm = operator_norm(path.difference());
  const Schedule& sched = path.schedule();
  const std::vector<double> nodes = linspace(0.0, 1.0, quad_points);
  std::vector<double> integrand(nodes.size());
  std::vector<double> gaps(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double s = nodes[i];
    const double gap = gap_at(path, s);
    if (!(gap >= 1e-9)) {
      std::ostringstream msg;
      msg << "gap " << gap << " at s = " << s;
      throw NumericalError(ErrorCode::kGapClosure, msg.str());
    }
    gaps[i] = gap;
    const double d1 = std::abs(sched.first(s)) * diff_norm;
    const double d2 = std::abs(sched.second(s)) * diff_norm;
    integrand[i] = 7.0 * d1 * d1 / (gap * gap * gap) + d2 / (gap * gap);
  }
  BoundReport out;
  out.quad_points = quad_points;
  out.boundary_initial = std::abs(sched.first(0.0)) * diff_norm / (total_time * gaps.front() * gaps.front());
  out.boundary_final = std::abs(sched.first(1.0)) * diff_norm / (total_time * gaps.back() * gaps.back());
  out.integral_term = simpson<double>(integrand, 0.0, 1.0) / total_time;
  out.total = out.boundary_initial + out.boundary_final + out.integral_term;
  return out;
}

BoundReport adiabatic_bound_converged(const AdiabaticPath& path, double total_time, double rel_tol, int quad_points,
                                      int max_points) {
  BoundReport current = adiabatic_bound(path, total_time, quad_points);
  for (int n = 2 * quad_points - 1; n <= max_points; n = 2 * n - 1) {
    BoundReport next = adiabatic_bound(path, total_time, n);
    const bool done = std::abs(next.total - current.total) <= rel_tol * std::abs(next.total);
    current = next;
    if (done) return current;
  }
  throw NumericalError(ErrorCode::kNoConvergence, "adiabatic_bound: quadrature did not converge");
}

double scaling_index(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 4) throw NumericalError(ErrorCode::kInsufficientData, "scaling_index needs at least 4 samples");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto [t, eps] = samples[i];
    if (!(t > 0.0) || !(eps > 0.0)) {
      throw NumericalError(ErrorCode::kInvalidArgument, "scaling_index: T and eps must be positive");
    }
    if (i > 0 && !(t > samples[i - 1].first)) {
      throw NumericalError(ErrorCode::kInvalidArgument, "scaling_index: T must be strictly increasing");
    }
    mx += std::log(t);
    my += std::log(eps);
  }
  const double n = static_cast<double>(samples.size());
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [t, eps] : samples) {
    const double dx = std::log(t) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(eps) - my);
  }
  return -sxy / sxx;
}

}  // namespace dasim
