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

#include <span>
#include <vector>

#include "dasim/exceptions.hpp"

namespace dasim {

/// Evenly spaced nodes a, ..., b.
inline std::vector<double> linspace(double a, double b, int count) {
  if (count < 2) throw NumericalError(ErrorCode::kInvalidArgument, "linspace needs at least 2 points");
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[i] = a + (b - a) * i / (count - 1);
  out.back() = b;
  return out;
}

/// Composite Simpson rule on an odd number of evenly spaced samples over [a, b].
template <class T>
T simpson(std::span<const T> values, double a, double b) {
  const std::size_t n = values.size();
  if (n < 3 || n % 2 == 0) {
    throw NumericalError(ErrorCode::kInvalidArgument, "Simpson rule needs an odd number (>= 3) of nodes");
  }
  const double h = (b - a) / static_cast<double>(n - 1);
  T odd{};
  T even{};
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (i % 2 == 1) {
      odd += values[i];
    } else {
      even += values[i];
    }
  }
  return (values.front() + values.back() + 4.0 * odd + 2.0 * even) * (h / 3.0);
}

/// Fourth-order cumulative integral of evenly spaced samples; out[0] = 0.
/// Falls back to the trapezoid rule below four samples.
inline std::vector<double> cumulative_integral(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double inc = 0.0;
    if (n < 4) {
      inc = 0.5 * h * (f[i] + f[i + 1]);
    } else if (i == 0) {
      inc = h / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
    } else if (i == n - 2) {
      inc = h / 24.0 * (f[n - 4] - 5.0 * f[n - 3] + 19.0 * f[n - 2] + 9.0 * f[n - 1]);
    } else {
      inc = h / 24.0 * (-f[i - 1] + 13.0 * f[i] + 13.0 * f[i + 1] - f[i + 2]);
    }
    out[i + 1] = out[i] + inc;
  }
  return out;
}

}  // namespace dasim
