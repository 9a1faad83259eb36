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

#include "dasim/tools/cli.hpp"

#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "dasim/exceptions.hpp"
#include "dasim/tools/experiments.hpp"

namespace dasim::tools {
namespace {

namespace fs = std::filesystem;

class Output {
 public:
  Output(const RunConfig& config, std::string command, std::ostream& log)
      : config_(config), command_(std::move(command)), log_(log) {}

  fs::path csv(const std::string& stem, const Table& table) const {
    const fs::path file = config_.out_dir / (stem + ".csv");
    write_csv(file, table, "config_hash=" + config_hash(config_) + " command=" + command_);
    log_ << "wrote " << file.string() << " (" << table.rows.size() << " rows)\n";
    return file;
  }

  // Plots are drawn from the CSV just written, never from in-memory results.
  void plot(const fs::path& csv_file, const PlotSpec& spec) const {
    if (!config_.svg) return;
    fs::path svg = csv_file;
    svg.replace_extension(".svg");
    write_svg(svg, read_csv(csv_file), spec);
    log_ << "wrote " << svg.string() << '\n';
  }

 private:
  const RunConfig& config_;
  std::string command_;
  std::ostream& log_;
};

std::string dt_tag(double dt) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "dt%g", dt);
  return buf;
}

void cmd_fig1(const RunConfig& c, const Output& o, std::ostream& log) {
  const auto rows = error_sweep(c);
  const auto file = o.csv("fig1", fig1_table(rows));
  o.plot(file, {"norm distance vs fidelity error", "T", {"norm_dist", "eps_tro"}, true, true});
  const auto& last = rows.back();
  log << "largest dt " << last.dt << ": norm_dist " << last.norm_dist << ", eps_tro " << last.eps_tro << '\n';
}

void cmd_fig2(const RunConfig& c, const Output& o, std::ostream& log) {
  const auto rows = error_sweep(c);
  const auto file = o.csv("fig2", fig2_table(rows));
  o.plot(file, {"error scaling", "T", {"eps_adb", "eps_tro", "eps_tot"}, true, true});
  const auto fit = fit_scaling(rows, c.sweep.fit_lo, c.sweep.fit_hi);
  o.csv("fig2_fit", fit_table(fit));
  log << "scaling index of eps_tot over [" << fit.lo << ", " << fit.hi << "]: " << fit.index_tot << '\n';
}

void cmd_fig3(const RunConfig& c, const Output& o, std::ostream& log) {
  const auto res = run_fig3(c);
  const auto file = o.csv("fig3", fig3_table(res.search));
  o.plot(file, {"near-degeneracy test", "dt", {"min_overlap"}, false, false});
  o.csv("fig3_summary", fig3_summary(res.search));
  for (std::size_t i = 0; i < res.traces.size(); ++i) {
    const auto trace_file = o.csv("fig3_trace_" + dt_tag(c.zeno.trace_dts[i]), trace_table(res.traces[i]));
    o.plot(trace_file, {"overlap trace " + dt_tag(c.zeno.trace_dts[i]), "s", {"overlap"}, false, false});
  }
  switch (res.search.outcome) {
    case CriticalOutcome::kFound:
      log << "first failure at dt " << res.search.first_fail << ", critical dt " << res.search.critical_dt() << " +- "
          << res.search.resolution() << (res.search.non_monotone ? " (non-monotone pattern)" : "") << '\n';
      break;
    case CriticalOutcome::kAllPass: log << "every dt passes\n"; break;
    case CriticalOutcome::kAllFail: log << "every dt fails\n"; break;
  }
}

void cmd_zeno(const RunConfig& c, const Output& o, std::ostream& log) {
  const auto traces = run_zeno(c);
  o.csv("zeno", zeno_table(traces));
  for (const auto& t : traces) {
    const std::string stem = c.zeno.family == "hermitian" ? "zeno_trace_hermitian" : "zeno_trace_" + dt_tag(t.dt);
    o.plot(o.csv(stem, trace_table(t)), {stem, "s", {"overlap"}, false, false});
    log << to_string(t.kind) << " dt " << t.dt << ": min overlap " << t.min_overlap << (t.pass ? " pass" : " fail")
        << '\n';
  }
}

void cmd_rl(const RunConfig& c, const Output& o, std::ostream& log) {
  const Table t = rl_table(c);
  o.csv("rl", t);
  log << "|J| = " << t.at(0, "abs_J") << ", |I| = " << t.at(0, "abs_I") << ", second-order bound "
      << t.at(0, "second_order_bound") << '\n';
}

void cmd_gamma(const RunConfig& c, const Output& o, std::ostream& log) {
  const Table t = gamma_table(c);
  o.csv("gamma", t);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    log << "T " << t.at(i, "T") << " L " << t.at(i, "L") << ": eps_adb " << t.at(i, "eps_adb_exact")
        << ", first order " << t.at(i, "eps_adb_first_order") << '\n';
  }
}

void cmd_bound(const RunConfig& c, const Output& o, std::ostream& log) {
  const Table t = bound_table(c);
  o.plot(o.csv("bound", t), {"adiabatic bound", "T", {"total", "corollary"}, true, true});
  log << "bound at T " << t.rows.front()[0] << ": " << t.at(0, "total") << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Digital adiabatic simulation experiments"};
  app.name("dasim");
  std::string config_path;
  std::string out_dir;
  bool svg = false;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_dir, "Output directory");
  app.add_flag("--svg", svg, "Also write SVG plots");
  app.add_option("--seed", seed, "Seed for randomized suites");
  app.add_option("--threads", threads, "Worker threads");
  app.require_subcommand(1, 1);
  app.fallthrough();

  using Command = std::function<void(const RunConfig&, const Output&, std::ostream&)>;
  const std::map<std::string, std::pair<std::string, Command>> commands{
      {"fig1", {"Norm distance against fidelity error over T", cmd_fig1}},
      {"fig2", {"Adiabatic, Trotter and total error scaling", cmd_fig2}},
      {"fig3", {"Near-degeneracy sweep over the Trotter step", cmd_fig3}},
      {"rl", {"Discrete oscillatory sum and its bounds", cmd_rl}},
      {"gamma", {"Transition-amplitude expansion", cmd_gamma}},
      {"bound", {"Adiabatic bound and robust corollary", cmd_bound}},
      {"zeno", {"Overlap traces for one operator family", cmd_zeno}},
  };
  for (const auto& [name, entry] : commands) app.add_subcommand(name, entry.first);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "dasim: " << e.what() << '\n';
    return kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  RunConfig config;
  try {
    config = config_path.empty() ? default_config() : load_config(config_path);
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (svg) config.svg = true;
    if (seed) config.seed = *seed;
    if (threads) config.threads = *threads;
    validate(config);
    build_path(config.model);
  } catch (const ConfigError& e) {
    err << "dasim: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "dasim: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "dasim: config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    commands.at(command).second(config, Output(config, command, out), out);
  } catch (const NumericalError& e) {
    err << "dasim: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "dasim: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}

}  // namespace dasim::tools
