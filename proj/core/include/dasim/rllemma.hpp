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
#include <vector>

#include "dasim/linalg.hpp"
#include "dasim/model.hpp"

namespace dasim {

using RealFunction = std::function<double(double)>;
using ComplexFunction = std::function<cplx(double)>;

/// J = (1/L) sum_{k=1}^{L} f(k/L) exp[-i dt sum_{j=0}^{k-1} lambda(j/L)].
struct OscillatorySumSpec {
  ComplexFunction f;
  RealFunction lambda;
  double total_time = 1.0;
  int steps = 1;

  double dt() const { return total_time / steps; }
};

/// Natural cubic spline through (s_i, v_i); s strictly increasing.
RealFunction cubic_interpolant(std::vector<double> s, std::vector<double> values);
ComplexFunction cubic_interpolant(std::vector<double> s, std::vector<cplx> values);

cplx discrete_sum_J(const OscillatorySumSpec& spec);

/// (exp(-i dt lambda) - 1) / (i dt). Tends to -lambda as dt -> 0; its modulus
/// is (2/dt) |sin(lambda dt / 2)|.
cplx omega(double lambda, double dt);

/// L (f(s)/omega(s) - f(s - 1/L)/omega(s - 1/L)). Throws OmegaZero near resonance.
cplx eta(const OscillatorySumSpec& spec, double s);

struct VariationOptions {
  double rel_tol = 1e-6;
  int initial_nodes = 129;
  int max_nodes = (1 << 16) + 1;
  double lower = 0.0;
  double upper = 1.0;
};

/// int |(g(s) / omega(lambda(s), dt))'| ds over [lower, upper], derivative by
/// central differences, Simpson with node doubling.
double variation_A(const ComplexFunction& g, const RealFunction& lambda, double dt,
                   const VariationOptions& options = {});

/// int_0^1 f(s) exp[-i T int_0^s lambda] ds with node doubling to `tol`.
cplx continuum_integral(const OscillatorySumSpec& spec, double tol = 1e-10, int max_nodes = (1 << 18) + 1);

inline constexpr double kRobustThreshold = 3.78;

struct RLBoundReport {
  cplx J;
  double abs_J = 0.0;
  cplx continuum_I;
  double boundary_bound = 0.0;       // (|f(0)|/lambda(0) + |f(1)|/lambda(1)) / T
  double first_order_bound = 0.0;    // boundary_bound + A(f, lambda) / T
  double eta_boundary = 0.0;         // (|eta(1/L)|/lambda(1/L) + |eta(1)|/lambda(1)) / T^2
  double variation_bound = 0.0;      // A(eta, lambda) / T^2
  double second_order_bound = 0.0;   // boundary_bound + eta_boundary + variation_bound
  double A_f_lambda = 0.0;
  double A_eta_lambda = 0.0;
  double max_lambda_dt = 0.0;
  bool threshold_ok = false;         // max_lambda_dt < 3.78
  double c_min = 0.0;                // min over grid of |omega| / lambda
  double c_max = 0.0;
};

RLBoundReport rl_bounds(const OscillatorySumSpec& spec, const VariationOptions& options = {});

struct RobustBound {
  double value = 0.0;           // max_{s=0,1} ||H'(s)|| / (T gap_1(s)^2)
  double max_lambda_dt = 0.0;   // dt * max_{s,l} (E_l(s) - E_0(s))
  double min_spacing = 0.0;     // min_{s,l} (E_{l+1}(s) - E_l(s))
  double min_gap = 0.0;         // min_s (E_1(s) - E_0(s))
  bool threshold_ok = false;
  bool spacing_ok = false;      // min_spacing > 1e-9
};

RobustBound corollary_robust_bound(const AdiabaticPath& path, double total_time, double dt, int grid_points = 201);

}  // namespace dasim
