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

#include "dasim/tools/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dasim/parallel.hpp"

namespace dasim::tools {
namespace {

double poly(const std::vector<double>& c, double s) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * s + *it;
  return v;
}

double s_after(const ZenoTrace& t, int step) {
  return step < 0 ? -1.0 : t.s[static_cast<std::size_t>(step) + 1];
}

std::vector<double> trace_row(const ZenoTrace& t) {
  return {t.dt, t.pass ? 1.0 : 0.0, t.min_overlap, s_after(t, t.argmin_step), s_after(t, t.first_failure)};
}

const std::vector<std::string> kTraceColumns{"dt", "pass", "min_overlap", "argmin_s", "first_failure_s"};

int sites_of(const AdiabaticPath& path) {
  int n = 0;
  while ((Index{1} << n) < path.dim()) ++n;
  return n;
}

}  // namespace

std::shared_ptr<const AdiabaticPath> build_path(const ModelConfig& model) {
  if (!model.path.empty()) return std::make_shared<const AdiabaticPath>(parse_path_definition(model.path));
  const Schedule schedule = model.schedule.empty() ? Schedule::linear() : Schedule::polynomial(model.schedule);
  return std::make_shared<const AdiabaticPath>(tfim_path(model.sites, model.periodic, schedule));
}

std::vector<ErrorTriplet> error_sweep(const RunConfig& config) {
  const auto path = build_path(config.model);
  const auto& times = config.sweep.times;
  const EvolutionSpec base(path, times.front(), config.sweep.steps, config.sweep.grid);
  const auto spectra = grid_spectra(base, config.threads);
  TripletOptions options;
  options.exact.tol = config.sweep.exact_tol;
  options.spectra = &spectra;
  std::vector<ErrorTriplet> rows(times.size());
  parallel_for(times.size(), config.threads, [&](std::size_t i) {
    rows[i] = error_triplet(EvolutionSpec(path, times[i], config.sweep.steps, config.sweep.grid), options);
  });
  return rows;
}

Table fig1_table(const std::vector<ErrorTriplet>& rows) {
  Table t{{"T", "dt", "norm_dist", "eps_tro", "eps_adb", "eps_tot", "eps_tro_d", "eps_adb_d", "exact_substeps"}, {}};
  for (const auto& r : rows) {
    t.add({r.total_time, r.dt, r.norm_dist, r.eps_tro, r.eps_adb, r.eps_tot, r.eps_tro_d, r.eps_adb_d,
           static_cast<double>(r.exact_substeps)});
  }
  return t;
}

Table fig2_table(const std::vector<ErrorTriplet>& rows) {
  Table t{{"T", "dt", "eps_adb", "eps_tro", "eps_tot"}, {}};
  for (const auto& r : rows) t.add({r.total_time, r.dt, r.eps_adb, r.eps_tro, r.eps_tot});
  return t;
}

ScalingFit fit_scaling(const std::vector<ErrorTriplet>& rows, double lo, double hi) {
  std::vector<std::pair<double, double>> tot, adb, tro;
  for (const auto& r : rows) {
    if (r.total_time < lo || r.total_time > hi) continue;
    tot.emplace_back(r.total_time, r.eps_tot);
    adb.emplace_back(r.total_time, r.eps_adb);
    tro.emplace_back(r.total_time, r.eps_tro);
  }
  ScalingFit fit;
  fit.lo = lo;
  fit.hi = hi;
  fit.points = static_cast<int>(tot.size());
  fit.index_tot = scaling_index(tot);
  fit.index_adb = scaling_index(adb);
  fit.index_tro = scaling_index(tro);
  return fit;
}

Table fit_table(const ScalingFit& fit) {
  Table t{{"T_lo", "T_hi", "points", "index_tot", "index_adb", "index_tro"}, {}};
  t.add({fit.lo, fit.hi, static_cast<double>(fit.points), fit.index_tot, fit.index_adb, fit.index_tro});
  return t;
}

OperatorFamily zeno_family(const std::shared_ptr<const AdiabaticPath>& path, double dt, int steps) {
  return trotter_family(EvolutionSpec(path, dt * steps, steps));
}

Fig3Result run_fig3(const RunConfig& config) {
  const auto path = build_path(config.model);
  const ZenoConfig& z = config.zeno;
  Fig3Result out;
  out.search = critical_step_search([&](double dt) { return zeno_family(path, dt, z.steps); }, z.dts, z.steps,
                                    z.threshold, config.threads);
  for (double dt : z.trace_dts) {
    const auto hit = std::find_if(z.dts.begin(), z.dts.end(), [dt](double g) { return std::abs(g - dt) < 1e-12; });
    if (hit != z.dts.end()) {
      out.traces.push_back(out.search.traces[static_cast<std::size_t>(hit - z.dts.begin())]);
    } else {
      out.traces.push_back(near_degeneracy_test(zeno_family(path, dt, z.steps), z.steps, z.threshold));
    }
  }
  return out;
}

Table fig3_table(const CriticalStepResult& search) {
  Table t{kTraceColumns, {}};
  for (const auto& trace : search.traces) t.add(trace_row(trace));
  return t;
}

Table fig3_summary(const CriticalStepResult& search) {
  Table t{{"outcome", "last_pass", "first_fail", "critical_dt", "resolution", "non_monotone"}, {}};
  const bool found = search.outcome == CriticalOutcome::kFound;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  t.add({static_cast<double>(search.outcome), search.outcome == CriticalOutcome::kAllFail ? nan : search.last_pass,
         search.outcome == CriticalOutcome::kAllPass ? nan : search.first_fail, found ? search.critical_dt() : nan,
         found ? search.resolution() : nan, search.non_monotone ? 1.0 : 0.0});
  return t;
}

Table trace_table(const ZenoTrace& trace) {
  Table t{{"step", "s", "overlap", "nearest_gap"}, {}};
  for (std::size_t j = 0; j < trace.overlaps.size(); ++j) {
    t.add({static_cast<double>(j + 1), trace.s[j + 1], trace.overlaps[j], trace.nearest_gap[j + 1]});
  }
  return t;
}

std::vector<ZenoTrace> run_zeno(const RunConfig& config) {
  const auto path = build_path(config.model);
  const ZenoConfig& z = config.zeno;
  if (z.family == "hermitian") return {near_degeneracy_test(hermitian_family(path), z.steps, z.threshold)};
  std::vector<ZenoTrace> out(z.trace_dts.size());
  parallel_for(out.size(), config.threads, [&](std::size_t i) {
    out[i] = near_degeneracy_test(zeno_family(path, z.trace_dts[i], z.steps), z.steps, z.threshold);
  });
  return out;
}

Table zeno_table(const std::vector<ZenoTrace>& traces) {
  Table t{kTraceColumns, {}};
  for (const auto& trace : traces) t.add(trace_row(trace));
  return t;
}

OscillatorySumSpec polynomial_spec(const std::vector<double>& f, const std::vector<double>& lambda, double total_time,
                                   int steps) {
  return {[f](double s) { return cplx(poly(f, s), 0.0); }, [lambda](double s) { return poly(lambda, s); }, total_time,
          steps};
}

OscillatorySumSpec random_smooth_spec(std::mt19937_64& rng, double t_min, double t_max) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  struct Modes {
    double re[4], im[4], phase[4], c[3], base;
  };
  auto m = std::make_shared<Modes>();
  for (int k = 0; k < 4; ++k) {
    m->re[k] = 2.0 * u(rng) - 1.0;
    m->im[k] = 2.0 * u(rng) - 1.0;
    m->phase[k] = 2.0 * kPi * u(rng);
  }
  // base in [0.6, 1.6], modulation at most 0.25 relative: lambda in [0.45, 2].
  m->base = 0.6 + u(rng);
  for (double& c : m->c) c = (u(rng) - 0.5) / 6.0;
  const double lambda_max = m->base * 1.25;
  const double t = t_min + (t_max - t_min) * u(rng);
  const double dt = 0.05 + (3.7 / lambda_max - 0.05) * u(rng);
  const int steps = std::max(1, static_cast<int>(std::ceil(t / dt)));
  OscillatorySumSpec spec;
  spec.f = [m](double s) {
    cplx v(0.0, 0.0);
    for (int k = 0; k < 4; ++k) v += cplx(m->re[k], m->im[k]) * std::cos(k * kPi * s + m->phase[k]);
    return v;
  };
  spec.lambda = [m](double s) {
    double v = 1.0;
    for (int k = 0; k < 3; ++k) v += m->c[k] * std::cos((k + 1) * kPi * s);
    return m->base * v;
  };
  spec.total_time = t;
  spec.steps = steps;
  return spec;
}

Table rl_table(const RunConfig& config) {
  const RlConfig& r = config.rl;
  std::vector<OscillatorySumSpec> specs{polynomial_spec(r.f, r.lambda, r.total_time, r.steps)};
  std::mt19937_64 rng(config.seed);
  for (int i = 0; i < r.random_specs; ++i) specs.push_back(random_smooth_spec(rng, r.random_t_min, r.random_t_max));
  std::vector<RLBoundReport> reports(specs.size());
  parallel_for(specs.size(), config.threads, [&](std::size_t i) { reports[i] = rl_bounds(specs[i]); });

  Table t{{"random", "T", "L", "dt", "abs_J", "abs_I", "boundary_bound", "first_order_bound", "eta_boundary",
           "variation_bound", "second_order_bound", "A_f_lambda", "A_eta_lambda", "max_lambda_dt", "threshold_ok",
           "c_min", "c_max"},
          {}};
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& s = specs[i];
    const auto& b = reports[i];
    t.add({i == 0 ? 0.0 : 1.0, s.total_time, static_cast<double>(s.steps), s.dt(), b.abs_J, std::abs(b.continuum_I),
           b.boundary_bound, b.first_order_bound, b.eta_boundary, b.variation_bound, b.second_order_bound,
           b.A_f_lambda, b.A_eta_lambda, b.max_lambda_dt, b.threshold_ok ? 1.0 : 0.0, b.c_min, b.c_max});
  }
  return t;
}

GammaRow gamma_row(const std::shared_ptr<const AdiabaticPath>& path, double total_time, int steps) {
  const EvolutionSpec spec(path, total_time, steps);
  const auto frames = eigenframe_sequence(spec);
  const auto g = gamma_product(frames, transition_matrices(frames), total_time);
  const ComplexVector psi_i = ground_state(path->initial().matrix()).state;
  const ComplexVector psi_f = ground_state(path->final().matrix()).state;
  const ComplexVector out = discrete_evolution(spec).apply(psi_i);
  GammaRow row;
  row.sites = sites_of(*path);
  row.total_time = total_time;
  row.steps = steps;
  row.eps_adb_exact = g.eps_adb_exact;
  row.eps_adb_discrete = fidelity_error(StateVector(psi_f), StateVector::normalized(out));
  row.eps_adb_first_order = g.eps_adb_first_order;
  row.max_abs_eps_l = g.eps_l.size() ? g.eps_l.cwiseAbs().maxCoeff() : 0.0;
  return row;
}

Table gamma_table(const RunConfig& config) {
  const auto path = build_path(config.model);
  std::vector<std::pair<double, int>> cases;
  for (double t : config.gamma.times) {
    for (int l : config.gamma.steps) cases.emplace_back(t, l);
  }
  std::vector<GammaRow> rows(cases.size());
  parallel_for(cases.size(), config.threads,
               [&](std::size_t i) { rows[i] = gamma_row(path, cases[i].first, cases[i].second); });
  Table t{{"sites", "T", "L", "eps_adb_exact", "eps_adb_discrete", "eps_adb_first_order", "max_abs_eps_l"}, {}};
  for (const auto& r : rows) {
    t.add({static_cast<double>(r.sites), r.total_time, static_cast<double>(r.steps), r.eps_adb_exact,
           r.eps_adb_discrete, r.eps_adb_first_order, r.max_abs_eps_l});
  }
  return t;
}

Table bound_table(const RunConfig& config) {
  const auto path = build_path(config.model);
  const auto& times = config.bound.times;
  std::vector<BoundReport> bounds(times.size());
  std::vector<RobustBound> robust(times.size());
  parallel_for(times.size(), config.threads, [&](std::size_t i) {
    bounds[i] = adiabatic_bound(*path, times[i], config.bound.quad_points);
    robust[i] = corollary_robust_bound(*path, times[i], times[i] / config.sweep.steps);
  });
  Table t{{"T", "dt", "boundary_initial", "boundary_final", "integral_term", "total", "corollary", "max_lambda_dt",
           "threshold_ok", "spacing_ok"},
          {}};
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto& b = bounds[i];
    const auto& r = robust[i];
    t.add({times[i], times[i] / config.sweep.steps, b.boundary_initial, b.boundary_final, b.integral_term, b.total,
           r.value, r.max_lambda_dt, r.threshold_ok ? 1.0 : 0.0, r.spacing_ok ? 1.0 : 0.0});
  }
  return t;
}

}  // namespace dasim::tools
