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

#include "dasim/gamma.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "dasim/parallel.hpp"
#include "dasim/quadrature.hpp"

namespace dasim {
namespace {

using Cluster = std::pair<Index, Index>;

std::vector<Cluster> energy_clusters(const RealVector& e, double width) {
  std::vector<Cluster> out;
  Index begin = 0;
  for (Index i = 1; i <= e.size(); ++i) {
    if (i == e.size() || e(i) - e(i - 1) >= width) {
      out.emplace_back(begin, i);
      begin = i;
    }
  }
  return out;
}

// Unitary W minimizing ||block * W - target||_F.
ComplexMatrix polar_alignment(const ComplexMatrix& block, const ComplexMatrix& target) {
  const ComplexMatrix m = block.adjoint() * target;
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// For every cluster, the previous-frame columns it continues. Greedy on the
// captured overlap weight, deterministic on ties. An isolated ground level
// always continues the previous ground column.
std::vector<std::vector<Index>> match_clusters(const ComplexMatrix& overlap, const std::vector<Cluster>& cl) {
  const Index n = overlap.rows();
  const bool pin = cl.front().second - cl.front().first == 1;
  std::vector<std::tuple<double, std::size_t, Index>> candidates;
  candidates.reserve(cl.size() * static_cast<std::size_t>(n));
  for (std::size_t c = 0; c < cl.size(); ++c) {
    const auto [b, e] = cl[c];
    for (Index l = 0; l < n; ++l) {
      double w = 0.0;
      for (Index k = b; k < e; ++k) w += std::norm(overlap(l, k));
      candidates.emplace_back(w, c, l);
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& x, const auto& y) { return std::get<0>(x) > std::get<0>(y); });
  std::vector<std::vector<Index>> assigned(cl.size());
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  if (pin) {
    assigned[0].push_back(0);
    taken[0] = true;
  }
  for (const auto& [w, c, l] : candidates) {
    const auto need = static_cast<std::size_t>(cl[c].second - cl[c].first);
    if (assigned[c].size() < need && !taken[static_cast<std::size_t>(l)]) {
      assigned[c].push_back(l);
      taken[static_cast<std::size_t>(l)] = true;
    }
  }
  for (auto& a : assigned) std::sort(a.begin(), a.end());
  return assigned;
}

ComplexMatrix gather_columns(const ComplexMatrix& m, const std::vector<Index>& cols) {
  ComplexMatrix out(m.rows(), static_cast<Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) out.col(static_cast<Index>(i)) = m.col(cols[i]);
  return out;
}

// Reorders and rotates `raw` so each column continues the matching column of `prev`.
void track(const ComplexMatrix& prev, const SpectralDecomposition& raw, double cluster_tol, ComplexMatrix& basis,
           RealVector& energies) {
  const Index n = raw.dim();
  const auto cl = energy_clusters(raw.eigenvalues, cluster_tol);
  const ComplexMatrix overlap = prev.adjoint() * raw.eigenvectors;
  const auto assigned = match_clusters(overlap, cl);
  basis.resize(n, n);
  energies.resize(n);
  for (std::size_t c = 0; c < cl.size(); ++c) {
    const auto [b, e] = cl[c];
    const ComplexMatrix block = raw.eigenvectors.middleCols(b, e - b);
    const ComplexMatrix w = polar_alignment(block, gather_columns(prev, assigned[c]));
    const ComplexMatrix rotated = block * w;
    for (std::size_t i = 0; i < assigned[c].size(); ++i) {
      const Index col = assigned[c][i];
      basis.col(col) = rotated.col(static_cast<Index>(i));
      double energy = 0.0;
      for (Index k = 0; k < e - b; ++k) energy += std::norm(w(k, static_cast<Index>(i))) * raw.eigenvalues(b + k);
      energies(col) = energy;
    }
  }
}

// Rotates degenerate blocks of the first frame toward the second frame.
void align_first_frame(SpectralDecomposition& first, const SpectralDecomposition& second, double cluster_tol) {
  const auto cl = energy_clusters(first.eigenvalues, cluster_tol);
  const ComplexMatrix overlap = second.eigenvectors.adjoint() * first.eigenvectors;
  const auto assigned = match_clusters(overlap, cl);
  for (std::size_t c = 0; c < cl.size(); ++c) {
    const auto [b, e] = cl[c];
    if (e - b < 2) continue;
    const ComplexMatrix block = first.eigenvectors.middleCols(b, e - b);
    const ComplexMatrix w = polar_alignment(block, gather_columns(second.eigenvectors, assigned[c]));
    first.eigenvectors.middleCols(b, e - b) = block * w;
  }
}

void fill_derived(const AdiabaticPath& path, EigenFrame& frame) {
  const Index n = frame.energies.size();
  frame.gaps = frame.energies.array() - frame.energies(0);
  const double slope = path.schedule().first(frame.s);
  const ComplexVector row = (frame.basis.col(0).adjoint() * path.difference() * frame.basis).transpose();
  frame.theta = ComplexVector::Zero(n);
  for (Index l = 1; l < n; ++l) frame.theta(l) = slope * row(l) / frame.gaps(l);
}

void check_ground(const EigenFrame& frame, std::size_t j, double tol) {
  for (Index l = 1; l < frame.energies.size(); ++l) {
    if (!(frame.energies(l) - frame.energies(0) > tol)) {
      std::ostringstream msg;
      msg << "ground level not isolated at frame " << j << " (s = " << frame.s << "), level " << l << " gap "
          << frame.energies(l) - frame.energies(0);
      throw NumericalError(ErrorCode::kDegeneratePath, msg.str());
    }
  }
}

}  // namespace

std::vector<EigenFrame> eigenframe_sequence(const EvolutionSpec& spec, const FrameOptions& options) {
  const auto& s = spec.samples();
  std::vector<SpectralDecomposition> spectra(s.size());
  parallel_for(s.size(), options.threads,
               [&](std::size_t j) { spectra[j] = hermitian_eig(spec.path().matrix_at(s[j])); });
  return eigenframe_sequence(spec.path(), s, std::move(spectra), options);
}

std::vector<EigenFrame> eigenframe_sequence(const AdiabaticPath& path, const std::vector<double>& samples,
                                            std::vector<SpectralDecomposition> spectra, const FrameOptions& options) {
  if (samples.empty() || samples.size() != spectra.size()) {
    throw NumericalError(ErrorCode::kDimensionMismatch, "eigenframe_sequence: one spectrum per sample required");
  }
  if (spectra.size() > 1) align_first_frame(spectra[0], spectra[1], options.cluster_tol);
  std::vector<EigenFrame> frames(samples.size());
  frames[0].s = samples[0];
  frames[0].energies = spectra[0].eigenvalues;
  frames[0].basis = spectra[0].eigenvectors;
  for (std::size_t j = 1; j < samples.size(); ++j) {
    frames[j].s = samples[j];
    track(frames[j - 1].basis, spectra[j], options.cluster_tol, frames[j].basis, frames[j].energies);
  }
  for (std::size_t j = 0; j < frames.size(); ++j) {
    check_ground(frames[j], j, options.ground_gap_tol);
    fill_derived(path, frames[j]);
  }
  return frames;
}

std::vector<ComplexMatrix> transition_matrices(const std::vector<EigenFrame>& frames) {
  std::vector<ComplexMatrix> out;
  if (frames.size() < 2) return out;
  out.reserve(frames.size() - 1);
  for (std::size_t j = 0; j + 1 < frames.size(); ++j) out.push_back(frames[j + 1].basis.adjoint() * frames[j].basis);
  return out;
}

GammaExpansion gamma_product(const std::vector<EigenFrame>& frames, const std::vector<ComplexMatrix>& transitions,
                             double total_time) {
  if (frames.empty() || transitions.size() + 1 != frames.size()) {
    throw NumericalError(ErrorCode::kDimensionMismatch, "gamma_product: need L frames and L-1 transitions");
  }
  const std::size_t steps = frames.size();
  const double dt = total_time / static_cast<double>(steps);
  const Index n = frames[0].gaps.size();
  auto lambda = [&](std::size_t j, Index l) { return std::exp(cplx(0.0, -dt * frames[j].gaps(l))); };

  GammaExpansion out;
  out.gamma = ComplexMatrix::Zero(n, n);
  for (Index l = 0; l < n; ++l) out.gamma(l, l) = lambda(0, l);
  for (std::size_t k = 0; k + 1 < steps; ++k) {
    out.gamma = transitions[k] * out.gamma;
    for (Index l = 0; l < n; ++l) out.gamma.row(l) *= lambda(k + 1, l);
  }

  // before(l, k) = prod_{j<=k} Lambda_j(l), k = 0..L-1 zero-based
  ComplexMatrix before(n, static_cast<Index>(steps));
  for (Index l = 0; l < n; ++l) {
    double phase = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
      phase += frames[k].gaps(l);
      before(l, static_cast<Index>(k)) = std::exp(cplx(0.0, -dt * phase));
    }
  }
  const ComplexVector total = before.col(static_cast<Index>(steps) - 1);
  out.gamma0 = total.asDiagonal();
  out.gamma1 = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k + 1 < steps; ++k) {
    const auto kk = static_cast<Index>(k);
    for (Index m = 0; m < n; ++m) {
      for (Index l = 0; l < n; ++l) {
        const cplx jump = transitions[k](l, m) - (l == m ? cplx(1.0, 0.0) : cplx(0.0, 0.0));
        out.gamma1(l, m) += total(l) / before(l, kk) * jump * before(m, kk);
      }
    }
  }
  out.eps_adb_exact = std::sqrt(std::clamp(1.0 - std::norm(out.gamma(0, 0)), 0.0, 1.0));
  out.eps_l = epsilon_l(frames, total_time);
  out.eps_adb_first_order = out.eps_l.norm();
  return out;
}

ComplexVector epsilon_l(const std::vector<EigenFrame>& frames, double total_time) {
  if (frames.empty()) throw NumericalError(ErrorCode::kInvalidArgument, "epsilon_l: no frames");
  const std::size_t steps = frames.size();
  const double dt = total_time / static_cast<double>(steps);
  const Index n = frames[0].gaps.size();
  ComplexVector out = ComplexVector::Zero(n - 1);
  for (Index l = 1; l < n; ++l) {
    double phase = 0.0;
    cplx acc(0.0, 0.0);
    for (std::size_t k = 0; k < steps; ++k) {
      acc += frames[k].theta(l) * std::exp(cplx(0.0, -dt * phase));
      phase += frames[k].gaps(l);
    }
    out(l - 1) = acc / static_cast<double>(steps);
  }
  return out;
}

namespace {

cplx continuum_on_grid(const AdiabaticPath& path, double total_time, int level, int nodes,
                       const FrameOptions& options) {
  const std::vector<double> s = linspace(0.0, 1.0, nodes);
  std::vector<SpectralDecomposition> spectra(s.size());
  parallel_for(s.size(), options.threads, [&](std::size_t j) { spectra[j] = hermitian_eig(path.matrix_at(s[j])); });
  std::vector<EigenFrame> frames;
  try {
    frames = eigenframe_sequence(path, s, std::move(spectra), options);
  } catch (const NumericalError& e) {
    if (e.code() == ErrorCode::kDegeneratePath) throw NumericalError(ErrorCode::kGapClosure, e.what());
    throw;
  }
  std::vector<double> gap(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) gap[i] = frames[i].gaps(level);
  const std::vector<double> omega = cumulative_integral(gap, 1.0 / (nodes - 1));
  std::vector<cplx> integrand(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) {
    integrand[i] = frames[i].theta(level) * std::exp(cplx(0.0, -total_time * omega[i]));
  }
  return simpson<cplx>(integrand, 0.0, 1.0);
}

}  // namespace

ContinuumResult epsilon_l_continuum(const AdiabaticPath& path, double total_time, int level,
                                    const ContinuumOptions& options) {
  if (level < 1 || level >= path.dim()) throw NumericalError(ErrorCode::kOutOfRange, "epsilon_l_continuum: bad level");
  int nodes = std::max(5, options.initial_nodes | 1);
  cplx previous = continuum_on_grid(path, total_time, level, nodes, options.frames);
  double change = 0.0;
  while (2 * nodes - 1 <= options.max_nodes) {
    nodes = 2 * nodes - 1;
    const cplx next = continuum_on_grid(path, total_time, level, nodes, options.frames);
    change = std::abs(next - previous);
    previous = next;
    if (change < options.tol) return {previous, nodes, change};
  }
  std::ostringstream msg;
  msg << "epsilon_l_continuum: no convergence at " << nodes << " nodes (last change " << change << ")";
  throw NumericalError(ErrorCode::kNoConvergence, msg.str());
}

}  // namespace dasim
