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

#include <memory>
#include <random>
#include <vector>

#include "dasim/errors.hpp"
#include "dasim/gamma.hpp"
#include "dasim/rllemma.hpp"
#include "dasim/tools/config.hpp"
#include "dasim/tools/table.hpp"
#include "dasim/zeno.hpp"

namespace dasim::tools {

std::shared_ptr<const AdiabaticPath> build_path(const ModelConfig& model);

/// One error triplet per sweep time, sharing the grid spectra. Rows come back
/// in time order whatever the thread count.
std::vector<ErrorTriplet> error_sweep(const RunConfig& config);

Table fig1_table(const std::vector<ErrorTriplet>& rows);
Table fig2_table(const std::vector<ErrorTriplet>& rows);

struct ScalingFit {
  double lo = 0.0;
  double hi = 0.0;
  int points = 0;
  double index_tot = 0.0;
  double index_adb = 0.0;
  double index_tro = 0.0;
};

/// Log-log fits over rows with lo <= T <= hi.
ScalingFit fit_scaling(const std::vector<ErrorTriplet>& rows, double lo, double hi);
Table fit_table(const ScalingFit& fit);

OperatorFamily zeno_family(const std::shared_ptr<const AdiabaticPath>& path, double dt, int steps);

struct Fig3Result {
  CriticalStepResult search;
  std::vector<ZenoTrace> traces;  // one per trace dt
};

Fig3Result run_fig3(const RunConfig& config);
Table fig3_table(const CriticalStepResult& search);
Table fig3_summary(const CriticalStepResult& search);
Table trace_table(const ZenoTrace& trace);

/// Traces for `zeno.family`: one per trace dt, or a single one for the Hermitian path.
std::vector<ZenoTrace> run_zeno(const RunConfig& config);
Table zeno_table(const std::vector<ZenoTrace>& traces);

/// f(s) = sum_k f_k s^k and lambda likewise.
OscillatorySumSpec polynomial_spec(const std::vector<double>& f, const std::vector<double>& lambda, double total_time,
                                   int steps);

/// Random smooth (f, lambda) of a few Fourier modes with lambda in
/// [0.5, 2] and dt chosen so max lambda * dt < 3.78. T is uniform in [t_min, t_max].
OscillatorySumSpec random_smooth_spec(std::mt19937_64& rng, double t_min, double t_max);

Table rl_table(const RunConfig& config);

struct GammaRow {
  int sites = 0;
  double total_time = 0.0;
  int steps = 0;
  double eps_adb_exact = 0.0;        // from the Gamma product
  double eps_adb_discrete = 0.0;     // fidelity of A_d |psi_i> against |psi_f>
  double eps_adb_first_order = 0.0;  // sqrt(sum |eps_l|^2)
  double max_abs_eps_l = 0.0;
};

GammaRow gamma_row(const std::shared_ptr<const AdiabaticPath>& path, double total_time, int steps);
Table gamma_table(const RunConfig& config);

Table bound_table(const RunConfig& config);

}  // namespace dasim::tools
