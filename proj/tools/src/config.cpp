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

#include "dasim/tools/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace dasim::tools {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) fail(where, "expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) fail(where, "unknown key '" + key + "'");
  }
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<int>();
}

std::vector<double> numbers(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(number(x, where));
  return out;
}

// Either an explicit list or {"log_min", "log_max", "count"}.
std::vector<double> time_list(const json& v, const std::string& where) {
  if (v.is_array()) return numbers(v, where);
  only_keys(v, where, {"log_min", "log_max", "count"});
  if (!v.contains("log_min") || !v.contains("log_max") || !v.contains("count")) {
    fail(where, "log grid needs log_min, log_max and count");
  }
  return log_grid(number(v["log_min"], where), number(v["log_max"], where), integer(v["count"], where));
}

// Either an explicit list or {"start", "stop", "step"}.
std::vector<double> step_list(const json& v, const std::string& where) {
  if (v.is_array()) return numbers(v, where);
  only_keys(v, where, {"start", "stop", "step"});
  if (!v.contains("start") || !v.contains("stop") || !v.contains("step")) {
    fail(where, "range needs start, stop and step");
  }
  return step_grid(number(v["start"], where), number(v["stop"], where), number(v["step"], where));
}

void require(bool ok, const std::string& where, const std::string& what) {
  if (!ok) fail(where, what);
}

bool ascending_positive(const std::vector<double>& v) {
  if (v.empty() || !(v.front() > 0.0)) return false;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) return false;
  }
  return true;
}

void parse_model(const json& j, ModelConfig& m) {
  only_keys(j, "model", {"sites", "boundary", "schedule", "path"});
  if (j.contains("sites")) m.sites = integer(j["sites"], "model.sites");
  if (j.contains("boundary")) {
    const auto& b = j["boundary"];
    require(b.is_string() && (b == "open" || b == "periodic"), "model.boundary", "expected \"open\" or \"periodic\"");
    m.periodic = b == "periodic";
  }
  if (j.contains("schedule")) {
    const auto& s = j["schedule"];
    only_keys(s, "model.schedule", {"name", "coefficients"});
    const std::string name = s.value("name", "linear");
    if (name == "linear") {
      m.schedule.clear();
    } else if (name == "custom-polynomial") {
      require(s.contains("coefficients"), "model.schedule", "custom-polynomial needs coefficients");
      m.schedule = numbers(s["coefficients"], "model.schedule.coefficients");
    } else {
      fail("model.schedule.name", "unknown schedule '" + name + "'");
    }
  }
  if (j.contains("path")) {
    require(j["path"].is_object(), "model.path", "expected a path definition object");
    m.path = j["path"].dump();
  }
}

void parse_sweep(const json& j, SweepConfig& s) {
  only_keys(j, "sweep", {"steps", "times", "grid", "exact_tol", "fit_window"});
  if (j.contains("steps")) s.steps = integer(j["steps"], "sweep.steps");
  if (j.contains("times")) s.times = time_list(j["times"], "sweep.times");
  if (j.contains("grid")) {
    require(j["grid"].is_string(), "sweep.grid", "expected a string");
    try {
      s.grid = parse_grid_policy(j["grid"].get<std::string>());
    } catch (const std::exception& e) {
      fail("sweep.grid", e.what());
    }
  }
  if (j.contains("exact_tol")) s.exact_tol = number(j["exact_tol"], "sweep.exact_tol");
  if (j.contains("fit_window")) {
    const auto w = numbers(j["fit_window"], "sweep.fit_window");
    require(w.size() == 2, "sweep.fit_window", "expected [lo, hi]");
    s.fit_lo = w[0];
    s.fit_hi = w[1];
  }
}

void parse_zeno(const json& j, ZenoConfig& z) {
  only_keys(j, "zeno", {"dts", "steps", "threshold", "trace_dts", "family"});
  if (j.contains("dts")) z.dts = step_list(j["dts"], "zeno.dts");
  if (j.contains("steps")) z.steps = integer(j["steps"], "zeno.steps");
  if (j.contains("threshold")) z.threshold = number(j["threshold"], "zeno.threshold");
  if (j.contains("trace_dts")) z.trace_dts = numbers(j["trace_dts"], "zeno.trace_dts");
  if (j.contains("family")) {
    const auto& f = j["family"];
    require(f.is_string() && (f == "trotter" || f == "hermitian"), "zeno.family",
            "expected \"trotter\" or \"hermitian\"");
    z.family = f.get<std::string>();
  }
}

void parse_rl(const json& j, RlConfig& r) {
  only_keys(j, "rl", {"f", "lambda", "total_time", "steps", "random_specs", "random_time_range"});
  if (j.contains("f")) r.f = numbers(j["f"], "rl.f");
  if (j.contains("lambda")) r.lambda = numbers(j["lambda"], "rl.lambda");
  if (j.contains("total_time")) r.total_time = number(j["total_time"], "rl.total_time");
  if (j.contains("steps")) r.steps = integer(j["steps"], "rl.steps");
  if (j.contains("random_specs")) r.random_specs = integer(j["random_specs"], "rl.random_specs");
  if (j.contains("random_time_range")) {
    const auto w = numbers(j["random_time_range"], "rl.random_time_range");
    require(w.size() == 2, "rl.random_time_range", "expected [lo, hi]");
    r.random_t_min = w[0];
    r.random_t_max = w[1];
  }
}

void parse_gamma(const json& j, GammaConfig& g) {
  only_keys(j, "gamma", {"steps", "times"});
  if (j.contains("steps")) {
    require(j["steps"].is_array(), "gamma.steps", "expected an array of integers");
    g.steps.clear();
    for (const auto& v : j["steps"]) g.steps.push_back(integer(v, "gamma.steps"));
  }
  if (j.contains("times")) g.times = time_list(j["times"], "gamma.times");
}

void parse_bound(const json& j, BoundConfig& b) {
  only_keys(j, "bound", {"times", "quad_points"});
  if (j.contains("times")) b.times = time_list(j["times"], "bound.times");
  if (j.contains("quad_points")) b.quad_points = integer(j["quad_points"], "bound.quad_points");
}

double poly_min(const std::vector<double>& c) {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 1000; ++i) {
    const double s = i / 1000.0;
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * s + *it;
    m = std::min(m, v);
  }
  return m;
}

}  // namespace

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi >= lo) || count < 1) throw ConfigError("log grid needs 0 < lo <= hi and count >= 1");
  if (count == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) out[k] = lo * std::pow(hi / lo, static_cast<double>(k) / (count - 1));
  out.back() = hi;
  return out;
}

std::vector<double> step_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !(stop >= start)) throw ConfigError("range needs step > 0 and stop >= start");
  std::vector<double> out;
  const auto n = static_cast<int>(std::floor((stop - start) / step + 1e-9));
  for (int k = 0; k <= n; ++k) out.push_back(std::round((start + k * step) * 1e12) / 1e12);
  return out;
}

RunConfig default_config() {
  RunConfig c;
  c.sweep.times = log_grid(4.0, 200.0, 40);
  c.zeno.dts = step_grid(0.1, 1.5, 0.05);
  return c;
}

RunConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig c = default_config();
  only_keys(j, "config", {"model", "sweep", "zeno", "rl", "gamma", "bound", "output", "seed", "threads"});
  if (j.contains("model")) parse_model(j["model"], c.model);
  if (j.contains("sweep")) parse_sweep(j["sweep"], c.sweep);
  if (j.contains("zeno")) parse_zeno(j["zeno"], c.zeno);
  if (j.contains("rl")) parse_rl(j["rl"], c.rl);
  if (j.contains("gamma")) parse_gamma(j["gamma"], c.gamma);
  if (j.contains("bound")) parse_bound(j["bound"], c.bound);
  if (j.contains("output")) {
    only_keys(j["output"], "output", {"dir", "svg"});
    if (j["output"].contains("dir")) {
      require(j["output"]["dir"].is_string(), "output.dir", "expected a string");
      c.out_dir = j["output"]["dir"].get<std::string>();
    }
    if (j["output"].contains("svg")) {
      require(j["output"]["svg"].is_boolean(), "output.svg", "expected a boolean");
      c.svg = j["output"]["svg"].get<bool>();
    }
  }
  if (j.contains("seed")) {
    require(j["seed"].is_number_unsigned(), "seed", "expected a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("threads")) c.threads = integer(j["threads"], "threads");
  validate(c);
  return c;
}

RunConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read config file " + file.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

void validate(const RunConfig& c) {
  require(c.model.sites >= 2 && c.model.sites <= kMaxSites, "model.sites",
          "must lie in [2, " + std::to_string(kMaxSites) + "]");
  require(c.sweep.steps >= 2, "sweep.steps", "L must be at least 2");
  require(ascending_positive(c.sweep.times), "sweep.times", "must be nonempty, positive and ascending");
  require(c.sweep.exact_tol > 0.0, "sweep.exact_tol", "must be positive");
  require(c.sweep.fit_lo > 0.0 && c.sweep.fit_hi > c.sweep.fit_lo, "sweep.fit_window", "needs 0 < lo < hi");
  require(ascending_positive(c.zeno.dts), "zeno.dts", "must be nonempty, positive and ascending");
  require(c.zeno.steps >= 1, "zeno.steps", "must be positive");
  require(c.zeno.threshold > 0.0 && c.zeno.threshold < 1.0, "zeno.threshold", "must lie in (0, 1)");
  for (double dt : c.zeno.trace_dts) require(dt > 0.0, "zeno.trace_dts", "must be positive");
  require(!c.rl.f.empty(), "rl.f", "needs at least one coefficient");
  require(!c.rl.lambda.empty() && poly_min(c.rl.lambda) > 0.0, "rl.lambda", "must be positive on [0, 1]");
  require(c.rl.total_time > 0.0, "rl.total_time", "must be positive");
  require(c.rl.steps >= 1, "rl.steps", "must be positive");
  require(c.rl.random_specs >= 0, "rl.random_specs", "must be non-negative");
  require(c.rl.random_t_min > 0.0 && c.rl.random_t_max >= c.rl.random_t_min, "rl.random_time_range",
          "needs 0 < lo <= hi");
  require(!c.gamma.steps.empty() && !c.gamma.times.empty(), "gamma", "steps and times must be nonempty");
  for (int l : c.gamma.steps) require(l >= 1, "gamma.steps", "must be positive");
  for (double t : c.gamma.times) require(t > 0.0, "gamma.times", "must be positive");
  require(ascending_positive(c.bound.times), "bound.times", "must be nonempty, positive and ascending");
  require(c.bound.quad_points >= 3 && c.bound.quad_points % 2 == 1, "bound.quad_points", "must be odd and >= 3");
  require(c.threads >= 1, "threads", "must be positive");
}

std::string canonical_json(const RunConfig& c) {
  json j;
  j["model"] = {{"sites", c.model.sites},
                {"boundary", c.model.periodic ? "periodic" : "open"},
                {"schedule", c.model.schedule},
                {"path", c.model.path.empty() ? json(nullptr) : json::parse(c.model.path)}};
  j["sweep"] = {{"steps", c.sweep.steps},
                {"times", c.sweep.times},
                {"grid", std::string(to_string(c.sweep.grid))},
                {"exact_tol", c.sweep.exact_tol},
                {"fit_window", {c.sweep.fit_lo, c.sweep.fit_hi}}};
  j["zeno"] = {{"dts", c.zeno.dts},
               {"steps", c.zeno.steps},
               {"threshold", c.zeno.threshold},
               {"trace_dts", c.zeno.trace_dts},
               {"family", c.zeno.family}};
  j["rl"] = {{"f", c.rl.f},
             {"lambda", c.rl.lambda},
             {"total_time", c.rl.total_time},
             {"steps", c.rl.steps},
             {"random_specs", c.rl.random_specs},
             {"random_time_range", {c.rl.random_t_min, c.rl.random_t_max}}};
  j["gamma"] = {{"steps", c.gamma.steps}, {"times", c.gamma.times}};
  j["bound"] = {{"times", c.bound.times}, {"quad_points", c.bound.quad_points}};
  j["seed"] = c.seed;
  return j.dump();
}

std::string config_hash(const RunConfig& c) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : canonical_json(c)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace dasim::tools
