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

#include "dasim/rllemma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "dasim/quadrature.hpp"

namespace dasim {
namespace {

template <class V>
class NaturalSpline {
 public:
  NaturalSpline(std::vector<double> s, std::vector<V> y) : s_(std::move(s)), y_(std::move(y)) {
    const std::size_t n = s_.size();
    if (n < 2 || y_.size() != n) {
      throw NumericalError(ErrorCode::kInvalidArgument, "cubic_interpolant needs >= 2 matching samples");
    }
    for (std::size_t i = 1; i < n; ++i) {
      if (!(s_[i] > s_[i - 1])) throw NumericalError(ErrorCode::kInvalidArgument, "spline nodes must increase");
    }
    m_.assign(n, V{});
    if (n < 3) return;
    // Thomas algorithm for the interior second derivatives.
    std::vector<double> diag(n, 0.0);
    std::vector<double> upper(n, 0.0);
    std::vector<V> rhs(n, V{});
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = s_[i] - s_[i - 1];
      const double h1 = s_[i + 1] - s_[i];
      diag[i] = 2.0 * (h0 + h1);
      upper[i] = h1;
      rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
      if (i > 1) {
        const double w = h0 / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
      }
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
      m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
      if (i == 1) break;
    }
  }

  V operator()(double x) const {
    const std::size_t n = s_.size();
    x = std::clamp(x, s_.front(), s_.back());
    std::size_t i = static_cast<std::size_t>(std::upper_bound(s_.begin(), s_.end(), x) - s_.begin());
    i = std::clamp<std::size_t>(i, 1, n - 1) - 1;
    const double h = s_[i + 1] - s_[i];
    const double a = (s_[i + 1] - x) / h;
    const double b = (x - s_[i]) / h;
    return a * y_[i] + b * y_[i + 1] + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * (h * h / 6.0);
  }

 private:
  std::vector<double> s_;
  std::vector<V> y_;
  std::vector<V> m_;
};

cplx checked_omega(double lambda, double dt) {
  const cplx w = omega(lambda, dt);
  if (std::abs(w) < 1e-12 * std::abs(lambda)) {
    std::ostringstream msg;
    msg << "omega vanishes at lambda*dt = " << lambda * dt;
    throw NumericalError(ErrorCode::kOmegaZero, msg.str());
  }
  return w;
}

double derivative_modulus(const ComplexFunction& h, double s, double lower, double upper) {
  const double eps = 1e-5 * (upper - lower);
  if (s - eps < lower) return std::abs((-3.0 * h(s) + 4.0 * h(s + eps) - h(s + 2.0 * eps)) / (2.0 * eps));
  if (s + eps > upper) return std::abs((3.0 * h(s) - 4.0 * h(s - eps) + h(s - 2.0 * eps)) / (2.0 * eps));
  return std::abs((h(s + eps) - h(s - eps)) / (2.0 * eps));
}

double variation_on_grid(const ComplexFunction& h, double lower, double upper, int nodes) {
  const std::vector<double> s = linspace(lower, upper, nodes);
  std::vector<double> values(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) values[i] = derivative_modulus(h, s[i], lower, upper);
  return simpson<double>(values, lower, upper);
}

cplx continuum_on_grid(const OscillatorySumSpec& spec, int nodes) {
  const std::vector<double> s = linspace(0.0, 1.0, nodes);
  std::vector<double> lam(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) lam[i] = spec.lambda(s[i]);
  const std::vector<double> phase = cumulative_integral(lam, 1.0 / (nodes - 1));
  std::vector<cplx> integrand(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    integrand[i] = spec.f(s[i]) * std::exp(cplx(0.0, -spec.total_time * phase[i]));
  }
  return simpson<cplx>(integrand, 0.0, 1.0);
}

void require_valid(const OscillatorySumSpec& spec) {
  if (!spec.f || !spec.lambda) throw NumericalError(ErrorCode::kInvalidArgument, "f and lambda must be set");
  if (!(spec.total_time > 0.0)) throw NumericalError(ErrorCode::kInvalidArgument, "T must be positive");
  if (spec.steps < 1) throw NumericalError(ErrorCode::kInvalidArgument, "L must be at least 1");
}

}  // namespace

RealFunction cubic_interpolant(std::vector<double> s, std::vector<double> values) {
  auto spline = std::make_shared<const NaturalSpline<double>>(std::move(s), std::move(values));
  return [spline](double x) { return (*spline)(x); };
}

ComplexFunction cubic_interpolant(std::vector<double> s, std::vector<cplx> values) {
  auto spline = std::make_shared<const NaturalSpline<cplx>>(std::move(s), std::move(values));
  return [spline](double x) { return (*spline)(x); };
}

cplx discrete_sum_J(const OscillatorySumSpec& spec) {
  require_valid(spec);
  const int steps = spec.steps;
  const double dt = spec.dt();
  double phase = 0.0;
  cplx acc(0.0, 0.0);
  for (int k = 1; k <= steps; ++k) {
    phase += spec.lambda(static_cast<double>(k - 1) / steps);
    acc += spec.f(static_cast<double>(k) / steps) * std::exp(cplx(0.0, -dt * phase));
  }
  return acc / static_cast<double>(steps);
}

cplx omega(double lambda, double dt) {
  if (!(dt > 0.0)) throw NumericalError(ErrorCode::kInvalidArgument, "omega: dt must be positive");
  // (e^{-ix} - 1) / (i dt) = (cos x - 1 - i sin x) / (i dt), with cos x - 1 = -2 sin^2(x/2)
  const double x = lambda * dt;
  const double half = std::sin(0.5 * x);
  const cplx numerator(-2.0 * half * half, -std::sin(x));
  return numerator / cplx(0.0, dt);
}

cplx eta(const OscillatorySumSpec& spec, double s) {
  require_valid(spec);
  const double back = 1.0 / spec.steps;
  const double prev = s - back;
  if (!(prev >= -1e-12 && s <= 1.0 + 1e-12)) {
    throw NumericalError(ErrorCode::kOutOfRange, "eta: need s and s - 1/L inside [0, 1]");
  }
  const double dt = spec.dt();
  const cplx now = spec.f(s) / checked_omega(spec.lambda(s), dt);
  const cplx before = spec.f(std::max(prev, 0.0)) / checked_omega(spec.lambda(std::max(prev, 0.0)), dt);
  return static_cast<double>(spec.steps) * (now - before);
}

double variation_A(const ComplexFunction& g, const RealFunction& lambda, double dt, const VariationOptions& options) {
  if (!(options.upper >= options.lower)) throw NumericalError(ErrorCode::kInvalidArgument, "variation_A: bad range");
  if (options.upper - options.lower < 1e-14) return 0.0;
  const ComplexFunction ratio = [&](double s) { return g(s) / checked_omega(lambda(s), dt); };
  int nodes = std::max(5, options.initial_nodes | 1);
  double previous = variation_on_grid(ratio, options.lower, options.upper, nodes);
  while (2 * nodes - 1 <= options.max_nodes) {
    nodes = 2 * nodes - 1;
    const double next = variation_on_grid(ratio, options.lower, options.upper, nodes);
    const bool done = std::abs(next - previous) <= options.rel_tol * std::abs(next) + 1e-14;
    previous = next;
    if (done) return previous;
  }
  throw NumericalError(ErrorCode::kNoConvergence, "variation_A: quadrature did not converge");
}

cplx continuum_integral(const OscillatorySumSpec& spec, double tol, int max_nodes) {
  require_valid(spec);
  int nodes = 257;
  cplx previous = continuum_on_grid(spec, nodes);
  while (2 * nodes - 1 <= max_nodes) {
    nodes = 2 * nodes - 1;
    const cplx next = continuum_on_grid(spec, nodes);
    const double change = std::abs(next - previous);
    previous = next;
    if (change < tol) return previous;
  }
  throw NumericalError(ErrorCode::kNoConvergence, "continuum_integral: quadrature did not converge");
}

RLBoundReport rl_bounds(const OscillatorySumSpec& spec, const VariationOptions& options) {
  require_valid(spec);
  RLBoundReport out;
  const double t = spec.total_time;
  const double dt = spec.dt();
  const int steps = spec.steps;
  out.J = discrete_sum_J(spec);
  out.abs_J = std::abs(out.J);
  out.continuum_I = continuum_integral(spec);

  out.c_min = std::numeric_limits<double>::infinity();
  out.c_max = 0.0;
  for (int j = 0; j <= steps; ++j) {
    const double lam = spec.lambda(static_cast<double>(j) / steps);
    out.max_lambda_dt = std::max(out.max_lambda_dt, lam * dt);
    const double c = std::abs(omega(lam, dt)) / lam;
    out.c_min = std::min(out.c_min, c);
    out.c_max = std::max(out.c_max, c);
  }
  out.threshold_ok = out.max_lambda_dt < kRobustThreshold;

  out.boundary_bound = (std::abs(spec.f(0.0)) / spec.lambda(0.0) + std::abs(spec.f(1.0)) / spec.lambda(1.0)) / t;
  const double inf = std::numeric_limits<double>::infinity();
  try {
    VariationOptions whole = options;
    whole.lower = 0.0;
    whole.upper = 1.0;
    out.A_f_lambda = variation_A(spec.f, spec.lambda, dt, whole);
    const double first = 1.0 / steps;
    out.eta_boundary = (std::abs(eta(spec, first)) / spec.lambda(first) + std::abs(eta(spec, 1.0)) / spec.lambda(1.0)) /
                       (t * t);
    VariationOptions tail = options;
    tail.lower = first;
    tail.upper = 1.0;
    const ComplexFunction eta_fn = [&spec](double s) { return eta(spec, s); };
    out.A_eta_lambda = variation_A(eta_fn, spec.lambda, dt, tail);
  } catch (const NumericalError& e) {
    if (e.code() != ErrorCode::kOmegaZero) throw;
    out.A_f_lambda = inf;
    out.eta_boundary = inf;
    out.A_eta_lambda = inf;
  }
  out.first_order_bound = out.boundary_bound + out.A_f_lambda / t;
  out.variation_bound = out.A_eta_lambda / (t * t);
  out.second_order_bound = out.boundary_bound + out.eta_boundary + out.variation_bound;
  return out;
}

RobustBound corollary_robust_bound(const AdiabaticPath& path, double total_time, double dt, int grid_points) {
  if (!(total_time > 0.0) || !(dt > 0.0)) {
    throw NumericalError(ErrorCode::kInvalidArgument, "corollary_robust_bound: T and dt must be positive");
  }
  const double diff_norm = operator_norm(path.difference());
  RobustBound out;
  out.min_spacing = std::numeric_limits<double>::infinity();
  out.min_gap = std::numeric_limits<double>::infinity();
  double max_lambda = 0.0;
  double gap0 = 0.0;
  double gap1 = 0.0;
  const std::vector<double> s = linspace(0.0, 1.0, std::max(2, grid_points));
  for (std::size_t i = 0; i < s.size(); ++i) {
    const RealVector e = hermitian_eigenvalues(path.matrix_at(s[i]));
    const double gap = e(1) - e(0);
    if (!(gap >= 1e-9)) {
      std::ostringstream msg;
      msg << "gap " << gap << " at s = " << s[i];
      throw NumericalError(ErrorCode::kGapClosure, msg.str());
    }
    if (i == 0) gap0 = gap;
    if (i + 1 == s.size()) gap1 = gap;
    out.min_gap = std::min(out.min_gap, gap);
    max_lambda = std::max(max_lambda, e(e.size() - 1) - e(0));
    for (Index l = 0; l + 1 < e.size(); ++l) out.min_spacing = std::min(out.min_spacing, e(l + 1) - e(l));
  }
  const Schedule& sched = path.schedule();
  out.value = std::max(std::abs(sched.first(0.0)) * diff_norm / (total_time * gap0 * gap0),
                       std::abs(sched.first(1.0)) * diff_norm / (total_time * gap1 * gap1));
  out.max_lambda_dt = max_lambda * dt;
  out.threshold_ok = out.max_lambda_dt < kRobustThreshold;
  out.spacing_ok = out.min_spacing > 1e-9;
  return out;
}

}  // namespace dasim
