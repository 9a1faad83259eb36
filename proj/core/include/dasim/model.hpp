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

#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dasim/linalg.hpp"

namespace dasim {

inline constexpr int kMaxSites = 12;

enum class PauliAxis { kX, kY, kZ };

struct PauliFactor {
  int site = 0;
  PauliAxis axis = PauliAxis::kZ;
};

struct PauliTerm {
  double coefficient = 0.0;
  std::vector<PauliFactor> factors;
};

/// Dense 2^N matrix of a Pauli sum. Site 0 is the leftmost tensor factor, so
/// site j acts on bit (N - 1 - j) of the basis index.
ComplexMatrix pauli_sum_matrix(int n_sites, std::span<const PauliTerm> terms);

class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(ComplexMatrix matrix, std::string label = {},
                             double tol = kLinalgDefaults.hermitian);

  const ComplexMatrix& matrix() const { return matrix_; }
  const std::string& label() const { return label_; }
  Index dim() const { return matrix_.rows(); }

 private:
  ComplexMatrix matrix_;
  std::string label_;
};

/// Interpolation schedule p(s) with analytic first and second derivatives.
struct Schedule {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> first;
  std::function<double(double)> second;

  static Schedule linear();
  /// p(s) = sum_k c_k s^k. Requires p(0) = 0 and p(1) = 1.
  static Schedule polynomial(std::vector<double> coefficients);
};

/// H(s) = (1 - p(s)) H_i + p(s) H_f on s in [0, 1].
class AdiabaticPath {
 public:
  AdiabaticPath(HermitianOperator initial, HermitianOperator final_op,
                Schedule schedule = Schedule::linear());

  const HermitianOperator& initial() const { return initial_; }
  const HermitianOperator& final() const { return final_; }
  const Schedule& schedule() const { return schedule_; }
  Index dim() const { return initial_.dim(); }

  /// order 0: H(s); order 1: H'(s); order 2: H''(s).
  HermitianOperator at(double s, int order = 0) const;

  /// Same as at(s, 0) without the Hermiticity re-check.
  ComplexMatrix matrix_at(double s) const;

  /// H_f - H_i, the direction of every derivative.
  const ComplexMatrix& difference() const { return difference_; }

  const SparseMatrix& initial_sparse() const { return initial_sparse_; }
  const SparseMatrix& final_sparse() const { return final_sparse_; }

 private:
  HermitianOperator initial_;
  HermitianOperator final_;
  Schedule schedule_;
  ComplexMatrix difference_;
  SparseMatrix initial_sparse_;
  SparseMatrix final_sparse_;
};

HermitianOperator path_at(const AdiabaticPath& path, double s, int order);

struct TfimHamiltonians {
  HermitianOperator h_x;  // -sum_j X_j
  HermitianOperator h_z;  // -sum_j (Z_j + Z_j Z_{j+1})
};

TfimHamiltonians build_tfim(int n_sites, bool periodic = false);

/// TFIM path from H_X to H_Z.
AdiabaticPath tfim_path(int n_sites, bool periodic = false, Schedule schedule = Schedule::linear());

/// E_level(s) - E_0(s).
double spectral_gap(const AdiabaticPath& path, double s, int level = 1);

/// Parses a path definition:
///   {"n_sites": N,
///    "H_i": [{"coeff": c, "ops": [[site, "X"], ...]}, ...],
///    "H_f": [...],
///    "schedule": {"name": "linear"} | {"name": "custom-polynomial", "coefficients": [c0, c1, ...]}}
/// Throws std::invalid_argument on schema violations.
AdiabaticPath parse_path_definition(std::string_view json_text);
AdiabaticPath load_path_definition(const std::filesystem::path& file);

}  // namespace dasim
