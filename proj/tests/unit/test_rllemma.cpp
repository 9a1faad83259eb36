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

#include <gtest/gtest.h>

#include <random>

#include "dasim/gamma.hpp"
#include "dasim/rllemma.hpp"
#include "oracles.hpp"

namespace dasim {
namespace {

const cplx I1(0.0, 1.0);

OscillatorySumSpec flat(double t, int l) {
  return {[](double) { return cplx(1.0, 0.0); }, [](double) { return 1.0; }, t, l};
}

// Closed form of the flat sum, phases exp(-i k T / L).
cplx flat_closed_form(double t, int l) {
  const double d = t / l;
  return std::exp(-I1 * d) * (1.0 - std::exp(-I1 * t)) / (static_cast<double>(l) * (1.0 - std::exp(-I1 * d)));
}

struct RandomSmooth {
  std::vector<double> a, b, c;
  double base = 1.0;

  explicit RandomSmooth(std::uint64_t seed, double lambda_base = 1.0) : base(lambda_base) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n = 0; n < 4; ++n) {
      a.push_back(u(rng));
      b.push_back(u(rng));
      c.push_back(0.1 * u(rng));
    }
  }
  cplx f(double s) const {
    cplx v(0.0, 0.0);
    for (std::size_t n = 0; n < a.size(); ++n) v += cplx(a[n] * std::cos(n * s * 2.0), b[n] * std::sin((n + 1) * s));
    return v;
  }
  double lambda(double s) const {
    double v = base;
    for (std::size_t n = 0; n < c.size(); ++n) v += base * c[n] * std::cos((n + 1) * s * 3.0);
    return v;
  }
  OscillatorySumSpec spec(double t, int l) const {
    return {[this](double s) { return f(s); }, [this](double s) { return lambda(s); }, t, l};
  }
  double max_f() const {
    double m = 0.0;
    for (int i = 0; i <= 1000; ++i) m = std::max(m, std::abs(f(i / 1000.0)));
    return m;
  }
};

TEST(DiscreteSum, ZeroAmplitude) {
  OscillatorySumSpec spec = flat(10.0, 50);
  spec.f = [](double) { return cplx(0.0, 0.0); };
  EXPECT_EQ(discrete_sum_J(spec), cplx(0.0, 0.0));
}

TEST(DiscreteSum, FlatClosedForm) {
  for (auto [t, l] : {std::pair{10.0, 7}, std::pair{50.0, 50}, std::pair{123.0, 400}, std::pair{3.0, 1}}) {
    EXPECT_LE(std::abs(discrete_sum_J(flat(t, l)) - flat_closed_form(t, l)), 1e-12) << t << " " << l;
  }
}

TEST(DiscreteSum, FineGridMatchesContinuum) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const RandomSmooth r(seed);
    const auto spec = r.spec(20.0, 100000);
    EXPECT_LE(std::abs(discrete_sum_J(spec) - continuum_integral(spec)), 1e-3 * r.max_f()) << seed;
  }
}

TEST(DiscreteSum, RiemannRateIsFirstOrder) {
  const RandomSmooth r(7);
  const cplx exact = continuum_integral(r.spec(10.0, 1), 1e-13);
  std::vector<double> ls;
  std::vector<double> errs;
  for (int l = 200; l <= 6400; l *= 2) {
    ls.push_back(l);
    errs.push_back(std::abs(discrete_sum_J(r.spec(10.0, l)) - exact));
  }
  const double slope = -oracle::loglog_slope(ls, errs);
  EXPECT_GE(slope, 0.8);
  EXPECT_LE(slope, 1.2);
}

TEST(DiscreteSum, ResonancePeriodicity) {
  for (double x : {0.3, 1.0, 2.5}) {
    const int l = 40;
    const double a = std::abs(discrete_sum_J(flat(x * l, l)));
    const double b = std::abs(discrete_sum_J(flat((x + 2.0 * kPi) * l, l)));
    EXPECT_NEAR(a, b, 1e-11);
  }
}

TEST(Omega, SmallStepLimit) {
  for (double lam : {0.5, 1.0, 7.0}) {
    const cplx w = omega(lam, 1e-8);
    EXPECT_NEAR(std::abs(w + lam) / lam, 0.0, 1e-6);
    EXPECT_NEAR(std::abs(w) / lam, 1.0, 1e-6);
  }
}

TEST(Omega, FullPeriodVanishes) { EXPECT_LE(std::abs(omega(2.0 * kPi, 1.0)), 1e-14); }

TEST(Omega, ModulusFormula) {
  EXPECT_NEAR(std::abs(omega(1.0, 1.0)), 2.0 * std::sin(0.5), 1e-15);
  EXPECT_NEAR(std::abs(omega(3.0, 0.2)), 10.0 * std::sin(0.3), 1e-14);
  EXPECT_THROW(omega(1.0, 0.0), NumericalError);
}

TEST(Omega, RatioBracketBelowThreshold) {
  for (double x = 0.01; x < kRobustThreshold; x += 0.01) {
    const double c = std::abs(omega(x, 1.0)) / x;
    EXPECT_LE(c, 1.0);
    EXPECT_GE(c, std::sin(kRobustThreshold / 2.0) / (kRobustThreshold / 2.0) - 1e-12);
  }
}

TEST(Eta, ConstantInputsVanish) {
  OscillatorySumSpec spec = flat(20.0, 40);
  spec.f = [](double) { return cplx(0.7, -0.2); };
  for (double s : {0.025, 0.5, 1.0}) EXPECT_LE(std::abs(eta(spec, s)), 1e-12);
}

TEST(Eta, LinearAmplitude) {
  OscillatorySumSpec spec = flat(20.0, 40);
  spec.f = [](double s) { return cplx(s, 0.0); };
  const cplx expected = 1.0 / omega(1.0, spec.dt());
  for (double s : {0.025, 0.4, 1.0}) EXPECT_LE(std::abs(eta(spec, s) - expected), 1e-12);
}

TEST(Eta, ResonanceThrows) {
  const auto spec = flat(2.0 * kPi * 10.0, 10);
  try {
    eta(spec, 0.5);
    FAIL();
  } catch (const NumericalError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOmegaZero);
  }
  EXPECT_THROW(eta(spec, 0.05), NumericalError);
}

TEST(Eta, ApproachesDerivativeAtFirstOrder) {
  const RandomSmooth r(11);
  const double dt = 0.5;
  auto ratio = [&](double s) { return r.f(s) / omega(r.lambda(s), dt); };
  const double s = 0.6;
  const cplx deriv = (ratio(s + 1e-5) - ratio(s - 1e-5)) / 2e-5;
  double prev = 0.0;
  for (int l = 50; l <= 800; l *= 2) {
    const auto spec = r.spec(dt * l, l);
    const double err = std::abs(eta(spec, s) - deriv);
    if (prev > 0.0) EXPECT_NEAR(err / prev, 0.5, 0.08) << l;
    prev = err;
  }
}

TEST(Variation, ConstantRatioIsZero) {
  const double dt = 0.3;
  const RealFunction lam = [](double s) { return 1.0 + s; };
  const ComplexFunction g = [&](double s) { return 2.0 * omega(lam(s), dt); };
  EXPECT_LE(variation_A(g, lam, dt), 1e-6);
}

TEST(Variation, LinearRatioIsOne) {
  const double dt = 0.3;
  const ComplexFunction g = [&](double s) { return s * omega(1.0, dt); };
  EXPECT_NEAR(variation_A(g, [](double) { return 1.0; }, dt), 1.0, 1e-8);
}

TEST(Variation, SelfConverges) {
  const RandomSmooth r(5);
  const ComplexFunction g = [&](double s) { return r.f(s); };
  const RealFunction lam = [&](double s) { return r.lambda(s); };
  VariationOptions tight;
  tight.rel_tol = 1e-9;
  const double a = variation_A(g, lam, 0.4);
  const double b = variation_A(g, lam, 0.4, tight);
  EXPECT_NEAR(a / b, 1.0, 1e-6);
}

TEST(Variation, ResonanceThrows) {
  EXPECT_THROW(variation_A([](double) { return cplx(1.0, 0.0); }, [](double) { return 2.0 * kPi; }, 1.0),
               NumericalError);
}

TEST(Variation, DiscreteVariationBelowIntegral) {
  // z -> z * omega(1, 1) makes variation_A the plain total variation of z.
  const cplx w = omega(1.0, 1.0);
  for (std::uint64_t seed : {3u, 4u, 8u}) {
    const RandomSmooth r(seed);
    const double total = variation_A([&](double s) { return r.f(s) * w; }, [](double) { return 1.0; }, 1.0);
    for (int l : {1, 2, 5, 17, 100, 1000}) {
      double sum = 0.0;
      for (int k = 1; k <= l; ++k) sum += std::abs(r.f(static_cast<double>(k) / l) - r.f(static_cast<double>(k - 1) / l));
      EXPECT_LE(sum, total * (1.0 + 1e-6)) << seed << " " << l;
    }
  }
}

TEST(Bounds, FlatSumWithinFactorTwo) {
  for (int l : {10, 37, 100, 400}) {
    const auto rep = rl_bounds(flat(static_cast<double>(l), l));
    EXPECT_LE(rep.abs_J / std::abs(rep.continuum_I), 2.0) << l;
    EXPECT_TRUE(rep.threshold_ok);
    EXPECT_NEAR(rep.abs_J, std::abs(rep.J), 0.0);
  }
}

TEST(Bounds, FullPeriodBreaksDown) {
  const double t = 2.0 * kPi * 50.0;
  const auto rep = rl_bounds(flat(t, 50));
  EXPECT_NEAR(rep.abs_J, 1.0, 1e-12);
  EXPECT_LE(std::abs(rep.continuum_I), 2.0 / t + 1e-9);
  EXPECT_FALSE(rep.threshold_ok);
  EXPECT_TRUE(std::isinf(rep.second_order_bound));
}

TEST(Bounds, FirstOrderScalesInverselyWithTime) {
  const OscillatorySumSpec shape{[](double s) { return cplx(1.0 + s * s, 0.5 * s); },
                                 [](double s) { return 1.0 + s; }, 50.0, 50};
  OscillatorySumSpec doubled = shape;
  doubled.total_time = 100.0;
  doubled.steps = 100;
  EXPECT_NEAR(rl_bounds(doubled).first_order_bound / rl_bounds(shape).first_order_bound, 0.5, 1e-6);
}

TEST(Bounds, CompositionAndBracket) {
  const RandomSmooth r(21);
  const auto rep = rl_bounds(r.spec(60.0, 90));
  EXPECT_NEAR(rep.first_order_bound, rep.boundary_bound + rep.A_f_lambda / 60.0, 1e-12);
  EXPECT_NEAR(rep.second_order_bound, rep.boundary_bound + rep.eta_boundary + rep.variation_bound, 1e-12);
  EXPECT_NEAR(rep.variation_bound, rep.A_eta_lambda / 3600.0, 1e-15);
  EXPECT_LE(rep.c_min, rep.c_max);
  EXPECT_LE(rep.c_max, 1.0);
  EXPECT_GT(rep.c_min, 0.47);
}

TEST(Bounds, RandomizedSecondOrderValidity) {
  int failures = 0;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double t = 50.0 + 150.0 * u(rng);
    const double dt = 0.05 + 2.5 * u(rng);
    const int l = std::max(1, static_cast<int>(std::lround(t / dt)));
    const RandomSmooth r(1000 + i, 0.5 + u(rng));
    const auto spec = r.spec(t, l);
    const auto rep = rl_bounds(spec);
    if (!rep.threshold_ok) continue;
    if (rep.abs_J > 5.0 * rep.second_order_bound) ++failures;
  }
  EXPECT_EQ(failures, 0);
}

TEST(Spline, InterpolatesAndConverges) {
  std::vector<double> s;
  std::vector<double> v;
  std::vector<cplx> z;
  for (int i = 0; i <= 100; ++i) {
    s.push_back(i / 100.0);
    v.push_back(std::sin(3.0 * s.back()));
    z.push_back(std::exp(I1 * 2.0 * s.back()));
  }
  const auto real = cubic_interpolant(s, v);
  const auto cx = cubic_interpolant(s, z);
  for (int i = 0; i <= 100; ++i) {
    EXPECT_NEAR(real(s[i]), v[i], 1e-14);
    EXPECT_LE(std::abs(cx(s[i]) - z[i]), 1e-14);
  }
  for (double x = 0.1; x < 0.9; x += 0.0137) {
    EXPECT_NEAR(real(x), std::sin(3.0 * x), 1e-7);
    EXPECT_LE(std::abs(cx(x) - std::exp(I1 * 2.0 * x)), 1e-7);
  }
  EXPECT_THROW(cubic_interpolant(std::vector<double>{0.0, 0.0}, std::vector<double>{1.0, 2.0}), NumericalError);
}

TEST(Spline, SampledInputsMatchAnalytic) {
  const RandomSmooth r(13);
  std::vector<double> s;
  std::vector<cplx> fv;
  std::vector<double> lv;
  for (int i = 0; i <= 400; ++i) {
    s.push_back(i / 400.0);
    fv.push_back(r.f(s.back()));
    lv.push_back(r.lambda(s.back()));
  }
  const OscillatorySumSpec sampled{cubic_interpolant(s, fv), cubic_interpolant(s, lv), 30.0, 60};
  EXPECT_LE(std::abs(discrete_sum_J(sampled) - discrete_sum_J(r.spec(30.0, 60))), 1e-6);
}

TEST(Continuum, FlatClosedForm) {
  for (double t : {1.0, 10.0, 80.0}) {
    EXPECT_LE(std::abs(continuum_integral(flat(t, 1)) - (1.0 - std::exp(-I1 * t)) / (I1 * t)), 1e-9);
  }
}

TEST(Corollary, LinearTfimUsesConstantDerivativeNorm) {
  const auto path = tfim_path(8);
  const auto rep = corollary_robust_bound(path, 100.0, 0.1, 21);
  EXPECT_NEAR(rep.value, 16.48578570895147 / (100.0 * 4.0), 1e-10);
  EXPECT_NEAR(rep.min_gap, 1.3652300705889475, 2e-2);
}

TEST(Corollary, ThresholdFlag) {
  const auto path = tfim_path(4);
  const auto lo = corollary_robust_bound(path, 50.0, 0.05);
  const auto hi = corollary_robust_bound(path, 50.0, 1.0);
  EXPECT_TRUE(lo.threshold_ok);
  EXPECT_FALSE(hi.threshold_ok);
  EXPECT_EQ(hi.threshold_ok, hi.max_lambda_dt < kRobustThreshold);
  EXPECT_NEAR(hi.max_lambda_dt / lo.max_lambda_dt, 20.0, 1e-9);
}

TEST(Corollary, GapClosureThrows) {
  const AdiabaticPath closing(HermitianOperator(-oracle::pauli('Z')), HermitianOperator(oracle::pauli('Z')));
  try {
    corollary_robust_bound(closing, 10.0, 0.1);
    FAIL();
  } catch (const NumericalError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGapClosure);
  }
}

TEST(Corollary, BoundsMeasuredErrorTwoSites) {
  auto path = std::make_shared<const AdiabaticPath>(tfim_path(2));
  for (double t : {20.0, 50.0, 100.0, 200.0}) {
    const int l = static_cast<int>(2 * t);
    const auto rep = corollary_robust_bound(*path, t, t / l);
    ASSERT_TRUE(rep.threshold_ok);
    const auto frames = eigenframe_sequence(EvolutionSpec(path, t, l));
    const double measured = gamma_product(frames, transition_matrices(frames), t).eps_adb_exact;
    EXPECT_LE(measured, 10.0 * rep.value) << t;
  }
}

}  // namespace
}  // namespace dasim
