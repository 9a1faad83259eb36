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

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dasim/evolve.hpp"

namespace dasim::tools {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelConfig {
  int sites = 8;
  bool periodic = false;
  std::vector<double> schedule;  // polynomial coefficients; empty means linear
  std::string path;              // inline path definition (JSON text); overrides the TFIM fields
};

struct SweepConfig {
  int steps = 100;
  std::vector<double> times;  // default: 40 log-spaced points in [4, 200]
  GridPolicy grid = GridPolicy::kEndpoints;
  double exact_tol = 1e-10;
  double fit_lo = 4.0;
  double fit_hi = 80.0;
};

struct ZenoConfig {
  std::vector<double> dts;  // default: 0.1, 0.15, ..., 1.5
  int steps = 100;
  double threshold = 0.99;
  std::vector<double> trace_dts{0.8, 1.0, 1.2};
  std::string family = "trotter";  // or "hermitian"
};

struct RlConfig {
  std::vector<double> f{1.0};       // polynomial coefficients in s
  std::vector<double> lambda{1.0};  // polynomial coefficients in s, positive on [0, 1]
  double total_time = 100.0;
  int steps = 100;
  int random_specs = 0;
  double random_t_min = 50.0;
  double random_t_max = 500.0;
};

struct GammaConfig {
  std::vector<int> steps{20, 100};
  std::vector<double> times{10.0, 50.0};
};

struct BoundConfig {
  std::vector<double> times{10.0, 20.0, 40.0, 80.0, 160.0};
  int quad_points = 201;
};

struct RunConfig {
  ModelConfig model;
  SweepConfig sweep;
  ZenoConfig zeno;
  RlConfig rl;
  GammaConfig gamma;
  BoundConfig bound;
  std::filesystem::path out_dir = ".";
  bool svg = false;
  std::uint64_t seed = 0;
  int threads = 1;
};

std::vector<double> log_grid(double lo, double hi, int count);
/// start, start + step, ... up to stop inclusive, rounded to 12 digits.
std::vector<double> step_grid(double start, double stop, double step);

RunConfig default_config();

/// Overlays a JSON document on the defaults. Unknown keys and invalid values
/// raise ConfigError.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& file);

/// Throws ConfigError when grids are empty or out of range.
void validate(const RunConfig& config);

/// The fields that can change results (not output location, svg or threads),
/// as sorted compact JSON.
std::string canonical_json(const RunConfig& config);
/// 64-bit FNV-1a of canonical_json, as 16 hex digits.
std::string config_hash(const RunConfig& config);

}  // namespace dasim::tools
