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

#include <vector>

#include "dasim/evolve.hpp"
#include "dasim/linalg.hpp"
#include "dasim/model.hpp"

namespace dasim {

/// Eigenbasis of H(s_j) with levels tracked across the grid. Column l of
/// `basis` is level l; column 0 is always the ground state.
struct EigenFrame {
  double s = 0.0;
  RealVector energies;    // tracked order, energies(0) is the minimum
  RealVector gaps;        // energies(l) - energies(0), gaps(0) = 0
  ComplexMatrix basis;
  ComplexVector theta;    // <0|H'(s)|l> / gaps(l), theta(0) = 0
};

struct FrameOptions {
  double ground_gap_tol = 1e-9;      // minimum E_1 - E_0 on every frame
  double cluster_tol = 1e-8;         // eigenvalues this close are aligned as a block
  int threads = 1;
};

/// Frames along the spec's grid. Excited levels are followed by maximal
/// overlap with the previous frame; near-degenerate blocks are rotated onto
/// the previous frame by a polar factor, which also enforces the
/// parallel-transport gauge <l(j)|l(j+1)> >= 0. The first frame's blocks are
/// aligned to the second frame.
std::vector<EigenFrame> eigenframe_sequence(const EvolutionSpec& spec, const FrameOptions& options = {});

/// Same, on given samples s_j and matching raw decompositions.
std::vector<EigenFrame> eigenframe_sequence(const AdiabaticPath& path, const std::vector<double>& samples,
                                            std::vector<SpectralDecomposition> spectra,
                                            const FrameOptions& options = {});

/// S_j = B_{j+1}^dagger B_j for j = 1..L-1.
std::vector<ComplexMatrix> transition_matrices(const std::vector<EigenFrame>& frames);

struct GammaExpansion {
  ComplexMatrix gamma;    // Lambda_L S_{L-1} Lambda_{L-1} ... S_1 Lambda_1
  ComplexMatrix gamma0;   // prod_j Lambda_j
  ComplexMatrix gamma1;   // first-order jump term
  ComplexVector eps_l;    // index l >= 1 stored at l - 1
  double eps_adb_exact = 0.0;
  double eps_adb_first_order = 0.0;  // sqrt(sum |eps_l|^2)
};

/// Lambda_j = diag(exp(-i gaps(j) dt)) with dt = T / L.
GammaExpansion gamma_product(const std::vector<EigenFrame>& frames, const std::vector<ComplexMatrix>& transitions,
                             double total_time);

/// eps_l = (1/L) sum_{k=1}^{L} theta_l(k) exp[-i dt sum_{j<k} gaps_l(j)], l >= 1.
ComplexVector epsilon_l(const std::vector<EigenFrame>& frames, double total_time);

struct ContinuumOptions {
  double tol = 1e-8;
  int initial_nodes = 65;
  int max_nodes = (1 << 16) + 1;
  FrameOptions frames{};
};

struct ContinuumResult {
  cplx value;
  int nodes = 0;
  double last_change = 0.0;
};

/// int_0^1 theta_l(s) exp[-i T Omega_l(s)] ds with Omega_l(s) = int_0^s gap_l.
/// Simpson on a uniform grid; the node count doubles until successive values
/// agree to `options.tol`.
ContinuumResult epsilon_l_continuum(const AdiabaticPath& path, double total_time, int level,
                                    const ContinuumOptions& options = {});

}  // namespace dasim
