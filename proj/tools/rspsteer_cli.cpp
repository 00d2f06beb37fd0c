// Copyright 2026 The rspsteer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line harness: walk-off and Werner sweeps, the four-phase table and
// single-state analysis.
//
//   rspsteer sweep-walkoff [--theta-start 0 --theta-end 90 --theta-step 5]
//   rspsteer sweep-werner  [--theta-start 0 --theta-end 1 --theta-step 0.05]
//   rspsteer phi-table     [--pnoise 0]
//   rspsteer analyze fixtures/rho_expt_40.json --metrics discord,steerable-weight
//
// Exit codes: 0 success, 2 configuration or input error, 3 solver failure,
// 4 sweep post-check violation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rspsteer.hpp"

namespace {

using namespace rspsteer;

struct Flags {
  double start = NAN;
  double end = NAN;
  double step = NAN;
  double pnoise = kDefaultPairNoise;
  double phi = 0.0;
  long long shots = 0;
  bool exact = false;
  unsigned long long seed = 1;
  std::string out;
  std::string path;
  std::string metrics = "fidelity-to-singlet,discord,steerable-weight,noise-fit,rsp-report";
};

void add_grid_flags(CLI::App* cmd, Flags& f, const char* unit) {
  cmd->add_option("--theta-start", f.start, std::string("grid start (") + unit + ")");
  cmd->add_option("--theta-end", f.end, std::string("grid end (") + unit + ")");
  cmd->add_option("--theta-step", f.step, std::string("grid step (") + unit + ")");
}

void add_sampling_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--pnoise", f.pnoise, "white-noise weight of the created pairs")->capture_default_str();
  cmd->add_option("--shots", f.shots, "counts per tomography setting (default: exact probabilities)");
  cmd->add_flag("--exact", f.exact, "use exact probabilities (default)");
  cmd->add_option("--seed", f.seed, "base seed; point i uses seed + i")->capture_default_str();
  cmd->add_option("--out", f.out, "output file (default: stdout)");
}

SweepConfig make_config(Scenario s, const Flags& f) {
  SweepConfig c = default_config(s);
  if (!std::isnan(f.start)) c.start = f.start;
  if (!std::isnan(f.end)) c.end = f.end;
  if (!std::isnan(f.step)) c.step = f.step;
  c.noise_p = f.pnoise;
  c.phi = f.phi;
  c.seed = f.seed;
  c.out = f.out;
  if (f.exact && f.shots != 0) throw ConfigError("--exact and --shots are mutually exclusive");
  if (f.shots != 0) c.shots = f.shots;
  validate_config(c);
  return c;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

int run_sweep(Scenario s, const Flags& f) {
  const SweepConfig c = make_config(s, f);
  const auto records = s == Scenario::Walkoff ? run_walkoff_sweep(c) : run_werner_sweep(c);
  std::ostringstream csv;
  write_sweep_csv(csv, records);
  emit(c.out, csv.str());
  if (!c.out.empty()) emit(c.out + ".gp", gnuplot_script(c.out, s));

  const auto violations = check_monotonic(records, s == Scenario::Walkoff);
  for (const auto& v : violations) {
    std::fprintf(stderr, "%s: %s track, %s moves the wrong way by %.3g at %g\n", c.shots ? "warning" : "post-check",
                 v.track.c_str(), v.metric.c_str(), v.drop, v.param);
  }
  if (!violations.empty() && !c.shots) throw PostCheckViolation("sweep monotonicity post-check failed");
  return 0;
}

int run_phi(const Flags& f) {
  const SweepConfig c = make_config(Scenario::PhiTable, f);
  emit(c.out, run_phi_table(c).dump(2) + "\n");
  return 0;
}

int run_analyze(const Flags& f) {
  std::vector<std::string> metrics;
  std::stringstream ss(f.metrics);
  for (std::string m; std::getline(ss, m, ',');)
    if (!m.empty()) metrics.push_back(m);
  const TwoQubitDensity rho = read_two_qubit_file(f.path);
  emit(f.out, analyze_state(rho, metrics, f.phi).dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Remote-state-preparation process steering toolkit"};
  app.require_subcommand(1);
  Flags walk, werner, phi, analyze;

  auto* w = app.add_subcommand("sweep-walkoff", "sweep the half-wave-plate angle of the compensated source");
  add_grid_flags(w, walk, "degrees");
  add_sampling_flags(w, walk);
  w->add_option("--phi", walk.phi, "target rotation phase (radians)")->capture_default_str();

  auto* wr = app.add_subcommand("sweep-werner", "sweep the Werner noise weight");
  add_grid_flags(wr, werner, "p_noise");
  add_sampling_flags(wr, werner);
  wr->add_option("--phi", werner.phi, "target rotation phase (radians)")->capture_default_str();

  auto* pt = app.add_subcommand("phi-table", "reports at phi = 0, pi/2, pi, 3pi/2");
  add_sampling_flags(pt, phi);

  auto* an = app.add_subcommand("analyze", "metrics of a two-qubit matrix file");
  an->add_option("path", analyze.path, "matrix JSON file")->required();
  an->add_option("--metrics", analyze.metrics, "comma-separated metric list")->capture_default_str();
  an->add_option("--phi", analyze.phi, "target rotation phase for rsp-report (radians)")->capture_default_str();
  an->add_option("--out", analyze.out, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  set_log_sink([](LogLevel level, const std::string& msg) {
    std::fprintf(stderr, "%s: %s\n", level == LogLevel::Warning ? "warning" : "info", msg.c_str());
  });

  try {
    if (w->parsed()) return run_sweep(Scenario::Walkoff, walk);
    if (wr->parsed()) return run_sweep(Scenario::Werner, werner);
    if (pt->parsed()) return run_phi(phi);
    return run_analyze(analyze);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const NotAState& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const SolverFailure& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return 3;
  } catch (const PostCheckViolation& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
