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

#pragma once

// Batch experiments: walk-off and Werner sweeps, the four-phase table and
// single-state analysis, with CSV/JSON/gnuplot output.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rspsteer/fixtures.hpp"
#include "rspsteer/qstate.hpp"
#include "rspsteer/rsp.hpp"
#include "rspsteer/steering.hpp"
#include "rspsteer/tomo.hpp"

namespace rspsteer {

enum class Scenario { Walkoff, Werner, PhiTable, Analyze };

struct SweepConfig {
  Scenario scenario = Scenario::Walkoff;
  double start = 0.0;
  double end = 90.0;
  double step = 5.0;
  double phi = 0.0;
  double noise_p = kDefaultPairNoise;
  std::optional<std::int64_t> shots;  // empty: exact probabilities
  std::uint64_t seed = 1;
  std::string out;
};

inline SweepConfig default_config(Scenario s) {
  SweepConfig c;
  c.scenario = s;
  if (s == Scenario::Werner) {
    c.start = 0.0;
    c.end = 1.0;
    c.step = 0.05;
  }
  return c;
}

inline void validate_config(const SweepConfig& c) {
  if (c.scenario == Scenario::Walkoff || c.scenario == Scenario::Werner) {
    if (!(c.step > 0.0)) throw ConfigError("grid step must be positive");
    if (!(c.end >= c.start)) throw ConfigError("grid is empty: end < start");
    const double hi = c.scenario == Scenario::Walkoff ? 90.0 : 1.0;
    if (c.start < 0.0 || c.end > hi) {
      throw ConfigError(c.scenario == Scenario::Walkoff ? "theta grid must lie in [0, 90] degrees"
                                                        : "p_noise grid must lie in [0, 1]");
    }
  }
  if (!(c.noise_p >= 0.0 && c.noise_p <= 1.0)) throw ConfigError("noise intensity must lie in [0, 1]");
  if (c.shots && *c.shots < 100) throw ConfigError("shots must be at least 100 when finite");
  if (!std::isfinite(c.phi)) throw ConfigError("phi must be finite");
}

// start, start + step, ... up to end (inclusive within 1e-9 of the step).
inline std::vector<double> grid_points(const SweepConfig& c) {
  std::vector<double> out;
  for (long i = 0;; ++i) {
    const double v = c.start + static_cast<double>(i) * c.step;
    if (v > c.end + 1e-9 * c.step) break;
    out.push_back(std::min(v, c.end));
  }
  return out;
}

struct SweepRecord {
  double param = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double avg_state_fidelity = 0.0;
  double f_sc = 0.0;
  double comp_fidelity = 0.0;
  double discord = 0.0;
  double steerable_weight = 0.0;
  std::string track;
  int alpha_iterations = 0;
  int beta_iterations = 0;
  int sw_iterations = 0;
};

// Simulates the protocol over one resource, tomographs it (exactly or from
// `shots` counts per output) and evaluates every metric.
inline SweepRecord evaluate_resource(const TwoQubitDensity& rho, double param, const std::string& track, double phi,
                                     const ClassicalBounds& bounds, std::optional<std::int64_t> shots,
                                     std::uint64_t seed) {
  OutputSextet sextet = simulate_rsp_outputs(rho, phi);
  if (shots) sextet = sample_sextet(sextet, *shots, seed);
  const ProcessMatrix chi = process_tomography(sextet);
  const ProcessMatrix target = chi_target(phi);
  SweepRecord r;
  r.param = param;
  r.track = track;
  const ModelResult a = quantum_composition_alpha(chi);
  const ModelResult b = quantum_robustness_beta(chi);
  const ModelResult sw = steerable_weight(rho);
  r.alpha = a.value;
  r.beta = b.value;
  r.avg_state_fidelity = avg_state_fidelity(chi, target);
  r.f_sc = bounds.f_sc;
  r.comp_fidelity = complementary_fidelity(chi, phi);
  r.discord = geometric_discord(rho);
  r.steerable_weight = sw.value;
  r.alpha_iterations = a.solution.iterations;
  r.beta_iterations = b.solution.iterations;
  r.sw_iterations = sw.solution.iterations;
  return r;
}

// Theory track (noisy source) first, then the ideal track.
inline std::vector<SweepRecord> run_walkoff_sweep(const SweepConfig& c) {
  validate_config(c);
  const ClassicalBounds bounds = classical_fidelity_bounds(chi_target(c.phi));
  const std::vector<double> grid = grid_points(c);
  std::vector<SweepRecord> out;
  for (std::size_t i = 0; i < grid.size(); ++i)
    out.push_back(evaluate_resource(make_noise_model_state(grid[i], c.noise_p), grid[i], "theory", c.phi, bounds,
                                    c.shots, c.seed + i));
  for (std::size_t i = 0; i < grid.size(); ++i)
    out.push_back(evaluate_resource(make_walkoff_state(grid[i]), grid[i], "ideal", c.phi, bounds, c.shots,
                                    c.seed + grid.size() + i));
  return out;
}

inline std::vector<SweepRecord> run_werner_sweep(const SweepConfig& c) {
  validate_config(c);
  const ClassicalBounds bounds = classical_fidelity_bounds(chi_target(c.phi));
  const std::vector<double> grid = grid_points(c);
  std::vector<SweepRecord> out;
  for (std::size_t i = 0; i < grid.size(); ++i)
    out.push_back(evaluate_resource(make_noisy_werner(grid[i], c.noise_p), grid[i], "theory", c.phi, bounds,
                                    c.shots, c.seed + i));
  for (std::size_t i = 0; i < grid.size(); ++i)
    out.push_back(evaluate_resource(make_werner(grid[i]), grid[i], "ideal", c.phi, bounds, c.shots,
                                    c.seed + grid.size() + i));
  return out;
}

inline std::vector<SweepRecord> select_track(const std::vector<SweepRecord>& records, const std::string& track) {
  std::vector<SweepRecord> out;
  for (const auto& r : records)
    if (r.track == track) out.push_back(r);
  return out;
}

// Parameter where a metric reaches zero: linear extrapolation through the
// last two positive points, clipped to the interval before the first zero.
// Returns NaN when the metric never vanishes or has fewer than two positive
// points.
inline double zero_crossing(const std::vector<SweepRecord>& track, double SweepRecord::*metric,
                            double zero_tol = 1e-6) {
  for (std::size_t i = 0; i < track.size(); ++i) {
    if (track[i].*metric > zero_tol) continue;
    if (i < 2) return NAN;
    const SweepRecord& a = track[i - 2];
    const SweepRecord& b = track[i - 1];
    const double slope = (b.*metric - a.*metric) / (b.param - a.param);
    if (!(slope < 0.0)) return b.param;
    const double x = b.param - b.*metric / slope;
    return std::clamp(x, b.param, track[i].param);
  }
  return NAN;
}

struct MonotonicityViolation {
  std::string track;
  std::string metric;
  double param = 0.0;
  double drop = 0.0;
};

// Checks that every metric moves in one direction along each track (up when
// `increasing`), allowing `tol` of counter-movement.
inline std::vector<MonotonicityViolation> check_monotonic(const std::vector<SweepRecord>& records, bool increasing,
                                                          double tol = 1e-4) {
  const std::pair<const char*, double SweepRecord::*> metrics[] = {
      {"alpha", &SweepRecord::alpha},
      {"beta", &SweepRecord::beta},
      {"avg_state_fidelity", &SweepRecord::avg_state_fidelity},
      {"comp_fidelity", &SweepRecord::comp_fidelity},
      {"discord", &SweepRecord::discord},
      {"steerable_weight", &SweepRecord::steerable_weight}};
  std::vector<MonotonicityViolation> out;
  for (const char* track : {"theory", "ideal"}) {
    const auto t = select_track(records, track);
    for (const auto& [name, metric] : metrics)
      for (std::size_t i = 1; i < t.size(); ++i) {
        const double change = t[i].*metric - t[i - 1].*metric;
        const double against = increasing ? -change : change;
        if (against > tol) out.push_back({track, name, t[i].param, against});
      }
  }
  return out;
}

inline std::string format_fixed(double v, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v == 0.0 ? 0.0 : v);
  return buf;
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
  os << "param,alpha,beta,avg_state_fidelity,f_sc,comp_fidelity,discord,steerable_weight,track\n";
  for (const auto& r : records) {
    os << format_fixed(r.param, 6) << ',' << format_fixed(r.alpha) << ',' << format_fixed(r.beta) << ','
       << format_fixed(r.avg_state_fidelity) << ',' << format_fixed(r.f_sc) << ',' << format_fixed(r.comp_fidelity)
       << ',' << format_fixed(r.discord) << ',' << format_fixed(r.steerable_weight) << ',' << r.track << '\n';
  }
}

// gnuplot script plotting alpha, beta and F_s of both tracks from the CSV.
inline std::string gnuplot_script(const std::string& csv_path, Scenario s) {
  const bool walkoff = s == Scenario::Walkoff;
  std::ostringstream g;
  g << "set datafile separator ','\n"
    << "set key autotitle columnhead outside\n"
    << "set xlabel '" << (walkoff ? "theta_HWP (deg)" : "p_noise") << "'\n"
    << "set ylabel 'value'\n"
    << "set yrange [0:1.05]\n"
    << "set terminal pngcairo size 900,600\n"
    << "set output '" << csv_path << ".png'\n"
    << "theory(col) = (strcol(9) eq 'theory') ? column(col) : 1/0\n"
    << "ideal(col) = (strcol(9) eq 'ideal') ? column(col) : 1/0\n"
    << "plot '" << csv_path << "' using 1:(theory(2)) with linespoints title 'alpha theory', \\\n"
    << "     '' using 1:(theory(3)) with linespoints title 'beta theory', \\\n"
    << "     '' using 1:(theory(4)) with linespoints title 'F_s theory', \\\n"
    << "     '' using 1:(ideal(2)) with lines dashtype 2 title 'alpha ideal', \\\n"
    << "     '' using 1:(ideal(3)) with lines dashtype 2 title 'beta ideal', \\\n"
    << "     '' using 1:(ideal(4)) with lines dashtype 2 title 'F_s ideal', \\\n"
    << "     '' using 1:5 with lines dashtype 3 title 'F_sc'\n";
  return g.str();
}

inline constexpr int kBlochSamples = 98;

inline std::vector<double> experiment_phases() {
  return {0.0, std::numbers::pi / 2, std::numbers::pi, 3 * std::numbers::pi / 2};
}

// Full reports and Bloch comparisons at the four phases for the source
// 0.94-weighted compensated pair (noise_p = 0 gives the singlet).
inline json run_phi_table(const SweepConfig& c) {
  validate_config(c);
  const TwoQubitDensity rho = make_noise_model_state(90.0, c.noise_p);
  json phases = json::array();
  std::vector<SteeringReport> reports;
  const auto phis = experiment_phases();
  for (std::size_t i = 0; i < phis.size(); ++i) {
    const double phi = phis[i];
    OutputSextet sextet = simulate_rsp_outputs(rho, phi);
    if (c.shots) sextet = sample_sextet(sextet, *c.shots, c.seed + i);
    const ProcessMatrix chi = process_tomography(sextet);
    const ClassicalBounds bounds = classical_fidelity_bounds(chi_target(phi));
    const SteeringReport report = steering_report(chi, phi, bounds);
    reports.push_back(report);
    const auto samples = bloch_comparison(chi, bounds.chi_c, kBlochSamples, c.seed + i);
    double min_r = INFINITY;
    double max_rc = 0.0;
    json sj = json::array();
    for (const auto& s : samples) {
      min_r = std::min(min_r, s.r);
      max_rc = std::max(max_rc, s.r_c);
      sj.push_back({{"input", {s.input[0], s.input[1], s.input[2]}}, {"r", s.r}, {"r_c", s.r_c}});
    }
    std::size_t larger = 0;
    for (const auto& s : samples) larger += s.r > s.r_c ? 1 : 0;
    phases.push_back({{"phi", phi},
                      {"report", report_to_json(report)},
                      {"bloch", {{"count", samples.size()},
                                 {"larger", larger},
                                 {"min_r", min_r},
                                 {"max_r_c", max_rc},
                                 {"samples", sj}}}});
  }
  double spread = 0.0;
  for (const auto& r : reports) {
    spread = std::max({spread, std::abs(r.alpha - reports[0].alpha), std::abs(r.beta - reports[0].beta),
                       std::abs(r.avg_state_fidelity - reports[0].avg_state_fidelity),
                       std::abs(r.comp_fidelity - reports[0].comp_fidelity), std::abs(r.f_sc - reports[0].f_sc)});
  }
  json out{{"resource", rho.label}, {"phases", phases}, {"max_report_spread", spread}};
  out["shots"] = c.shots ? json(*c.shots) : json("exact");
  out["seed"] = c.seed;
  return out;
}

inline const std::vector<std::string>& analysis_metrics() {
  static const std::vector<std::string> names{"fidelity-to-singlet", "discord", "steerable-weight", "noise-fit",
                                              "rsp-report"};
  return names;
}

inline json analyze_state(const TwoQubitDensity& rho, const std::vector<std::string>& metrics, double phi = 0.0) {
  for (const auto& m : metrics) {
    bool known = false;
    for (const auto& k : analysis_metrics()) known = known || k == m;
    if (!known) throw ConfigError("unknown metric '" + m + "'");
  }
  const CMatrix physical = physical_matrix(rho);
  const TwoQubitDensity projected{physical, rho.label};
  json out{{"label", rho.label}, {"projection_distance", (physical - rho.matrix).cwiseAbs().maxCoeff()}};
  for (const auto& m : metrics) {
    if (m == "fidelity-to-singlet") {
      out[m] = overlap_fidelity(rho.matrix, singlet_vector());
    } else if (m == "discord") {
      out[m] = geometric_discord(projected);
    } else if (m == "steerable-weight") {
      out[m] = steerable_weight(projected).value;
    } else if (m == "noise-fit") {
      const NoiseFit f = fit_noise_intensity(projected);
      out[m] = {{"p", f.p}, {"fidelity", f.fidelity}};
    } else if (m == "rsp-report") {
      const ProcessMatrix chi = process_tomography(simulate_rsp_outputs(projected, phi));
      out[m] = report_to_json(steering_report(chi, phi, classical_fidelity_bounds(chi_target(phi))));
      out[m]["phi"] = phi;
    }
  }
  return out;
}

}  // namespace rspsteer
