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

// Quantification of process steering: the classical (hidden-state) process
// model, quantum composition alpha, quantum robustness beta, the classical
// fidelity bounds, average and complementary state fidelities, steerable
// weight and the Bloch-length comparison against the best classical process.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rspsteer/linalg.hpp"
#include "rspsteer/qstate.hpp"
#include "rspsteer/rsp.hpp"
#include "rspsteer/sdp.hpp"
#include "rspsteer/tomo.hpp"

namespace rspsteer {

inline constexpr int kHiddenStates = 8;

// Eigenvalues of a process matrix at or below this (relative to its largest)
// count as zero when the alpha program is restricted to the support.
inline constexpr double kRangeCut = 1e-10;

// Deterministic outcome triple v_lambda for lambda = 4 n1 + 2 n2 + n3 + 1,
// v = ((-1)^n1, (-1)^n2, (-1)^n3). `lambda` is 1-based.
inline std::array<int, 3> hidden_outcomes(int lambda) {
  if (lambda < 1 || lambda > kHiddenStates) throw OutOfRange("hidden state index must be in 1..8");
  const int l = lambda - 1;
  return {(l >> 2) & 1 ? -1 : 1, (l >> 1) & 1 ? -1 : 1, l & 1 ? -1 : 1};
}

// True when hidden state lambda answers outcome n for measurement m.
inline bool hidden_response(int lambda, int m, int n) {
  return hidden_outcomes(lambda)[m - 1] == (n == 0 ? 1 : -1);
}

// Sub-normalized hidden states sigma_lambda (index 0 holds lambda = 1).
struct HiddenStateModel {
  std::array<CMatrix, kHiddenStates> sigma;

  HiddenStateModel() { sigma.fill(CMatrix::Zero(2, 2)); }

  double total_weight() const {
    double w = 0.0;
    for (const auto& s : sigma) w += real_trace(s);
    return w;
  }
};

// O^c_nm = 2 sum_{lambda: v_lambda[m] = (-1)^n} sigma_lambda, so that
// O^c_0m + O^c_1m = 2 sum_lambda sigma_lambda for every m and
// tr chi_c = sum_lambda tr sigma_lambda.
inline OutputSextet classical_outputs(const HiddenStateModel& model) {
  OutputSextet s;
  for (int m = 1; m <= 3; ++m)
    for (int n = 0; n < 2; ++n) {
      CMatrix acc = CMatrix::Zero(2, 2);
      for (int lambda = 1; lambda <= kHiddenStates; ++lambda)
        if (hidden_response(lambda, m, n)) acc += model.sigma[lambda - 1];
      s.at(m, n) = 2.0 * acc;
    }
  return s;
}

// chi_c through the same linear map as process tomography; no repair and no
// normalization.
inline ProcessMatrix classical_chi_from_model(const HiddenStateModel& model) {
  return {hermitize(chi_from_sextet_linear(classical_outputs(model)))};
}

namespace detail {

// sigma -> contribution of hidden state lambda to chi_c.
inline HermitianMap hidden_to_chi(int lambda) {
  return [lambda](const CMatrix& s) {
    HiddenStateModel m;
    m.sigma[lambda - 1] = s;
    return classical_chi_from_model(m).chi;
  };
}

inline HermitianMap scaled(HermitianMap f, double c) {
  return [f = std::move(f), c](const CMatrix& s) { CMatrix out = c * f(s); return out; };
}

// Adds the eight hidden-state blocks and returns their indices.
inline std::array<int, kHiddenStates> add_hidden_blocks(SdpProblem& p) {
  std::array<int, kHiddenStates> idx{};
  for (int lambda = 1; lambda <= kHiddenStates; ++lambda) idx[lambda - 1] = p.add_block("sigma" + std::to_string(lambda), 2);
  return idx;
}

// constant + sign * chi_c >= 0.
inline PsdConstraint chi_constraint(std::string name, const CMatrix& constant, double sign,
                                    const std::array<int, kHiddenStates>& blocks) {
  PsdConstraint c{std::move(name), constant, {}, {}};
  for (int lambda = 1; lambda <= kHiddenStates; ++lambda)
    c.blocks.push_back({blocks[lambda - 1], scaled(hidden_to_chi(lambda), sign)});
  return c;
}

inline std::vector<BlockTerm> total_weight_terms(const std::array<int, kHiddenStates>& blocks) {
  std::vector<BlockTerm> terms;
  for (int b : blocks) terms.push_back({b, identity(2)});
  return terms;
}

inline HiddenStateModel model_from_solution(const SdpSolution& s, const std::array<int, kHiddenStates>& blocks) {
  HiddenStateModel m;
  for (int lambda = 0; lambda < kHiddenStates; ++lambda) m.sigma[lambda] = s.values[blocks[lambda]];
  return m;
}

inline void require_optimal(const SdpSolution& s, const char* what) {
  if (s.status != SdpStatus::Optimal) {
    throw SolverFailure(std::string(what) + ": solver returned " + to_string(s.status) + " after " +
                        std::to_string(s.iterations) + " iterations (gap " + std::to_string(s.duality_gap) +
                        ", residual " + std::to_string(s.feasibility_residual) + ")");
  }
}

inline void require_process(const ProcessMatrix& p, const char* what) {
  if (p.chi.rows() != 4 || p.chi.cols() != 4) throw NotAState(std::string(what) + ": chi must be 4x4");
  if (hermiticity_residual(p.chi) > kTol.hermiticity_check) throw NonHermitianInput(std::string(what) + ": chi is not Hermitian");
}

}  // namespace detail

struct ModelResult {
  double value = 0.0;      // alpha, beta or F_Ec, clipped to its range
  double raw_value = 0.0;  // as returned by the solver
  HiddenStateModel model;
  SdpSolution solution;
};

namespace detail {

// Coefficient C with Re tr(C sigma) = Re tr(h * chi_c(sigma)) for the
// contribution of hidden state lambda.
inline CMatrix pull_back(const CMatrix& h, int lambda) {
  const HermitianMap f = hidden_to_chi(lambda);
  CMatrix coeff = CMatrix::Zero(2, 2);
  for (const auto& b : hermitian_basis(2)) coeff += herm_inner(h, f(b)) * b;
  return coeff;
}

// sigma -> p^dagger chi_c(sigma) p for hidden state lambda.
inline HermitianMap compressed_hidden_to_chi(int lambda, const CMatrix& p, double sign) {
  return [f = hidden_to_chi(lambda), p, sign](const CMatrix& s) {
    CMatrix out = sign * (p.adjoint() * f(s) * p);
    return out;
  };
}

}  // namespace detail

// alpha = min 1 - tr chi_c  s.t.  sigma_lambda >= 0, chi_c >= 0, chi_expt - chi_c >= 0.
//
// When chi_expt is singular the last two constraints pin chi_c to the range
// of chi_expt and leave the problem without a strictly feasible point. The
// constraints are then restricted to that range and the kernel part of chi_c
// is set to zero by linear equalities; the optimum is unchanged.
inline ModelResult quantum_composition_alpha(const ProcessMatrix& chi_expt, const SdpOptions& opt = {}) {
  detail::require_process(chi_expt, "quantum_composition_alpha");
  SdpProblem p;
  const auto blocks = detail::add_hidden_blocks(p);
  p.sense = Sense::Maximize;
  p.objective = detail::total_weight_terms(blocks);
  const CMatrix chi = hermitize(chi_expt.chi);
  const HermEig e = eig_hermitian(chi);
  const double cut = kRangeCut * std::max(1.0, e.values.cwiseAbs().maxCoeff());
  Eigen::Index kernel = 0;
  while (kernel < 4 && e.values[kernel] <= cut) ++kernel;
  if (kernel == 0 || kernel == 4) {
    p.psd_constraints.push_back(detail::chi_constraint("chi_c", CMatrix::Zero(4, 4), 1.0, blocks));
    p.psd_constraints.push_back(detail::chi_constraint("chi_expt - chi_c", chi, -1.0, blocks));
  } else {
    const Eigen::Index rank = 4 - kernel;
    const CMatrix q = e.vectors.leftCols(kernel);
    const CMatrix r = e.vectors.rightCols(rank);
    PsdConstraint lower{"chi_c on range", CMatrix::Zero(rank, rank), {}, {}};
    PsdConstraint upper{"chi_expt - chi_c on range", r.adjoint() * chi * r, {}, {}};
    upper.constant = hermitize(upper.constant);
    for (int lambda = 1; lambda <= kHiddenStates; ++lambda) {
      lower.blocks.push_back({blocks[lambda - 1], detail::compressed_hidden_to_chi(lambda, r, 1.0)});
      upper.blocks.push_back({blocks[lambda - 1], detail::compressed_hidden_to_chi(lambda, r, -1.0)});
    }
    p.psd_constraints.push_back(std::move(lower));
    p.psd_constraints.push_back(std::move(upper));
    // Re tr(h chi_c) = 0 for every Hermitian h touching the kernel
    std::vector<CMatrix> hs;
    for (const auto& b : hermitian_basis(static_cast<int>(kernel))) hs.push_back(q * b * q.adjoint());
    for (Eigen::Index a = 0; a < kernel; ++a)
      for (Eigen::Index c = 0; c < rank; ++c) {
        const CMatrix pq = r.col(c) * q.col(a).adjoint();
        hs.push_back(0.5 * (pq + pq.adjoint()));
        hs.push_back(0.5 * (-kI * pq + kI * pq.adjoint()));
      }
    for (std::size_t i = 0; i < hs.size(); ++i) {
      LinearEquality eq{"kernel " + std::to_string(i), {}, {}, 0.0};
      for (int lambda = 1; lambda <= kHiddenStates; ++lambda)
        eq.blocks.push_back({blocks[lambda - 1], detail::pull_back(hs[i], lambda)});
      p.equalities.push_back(std::move(eq));
    }
  }
  ModelResult r;
  r.solution = solve(p, opt);
  detail::require_optimal(r.solution, "quantum_composition_alpha");
  r.raw_value = 1.0 - r.solution.objective_value;
  r.value = std::clamp(r.raw_value, 0.0, 1.0);
  r.model = detail::model_from_solution(r.solution, blocks);
  return r;
}

// beta = min tr chi_c - 1  s.t.  sigma_lambda >= 0, chi_c >= 0,
// chi_c - chi_expt >= 0, tr chi_c >= 1.
inline ModelResult quantum_robustness_beta(const ProcessMatrix& chi_expt, const SdpOptions& opt = {}) {
  detail::require_process(chi_expt, "quantum_robustness_beta");
  SdpProblem p;
  const auto blocks = detail::add_hidden_blocks(p);
  p.sense = Sense::Minimize;
  p.objective = detail::total_weight_terms(blocks);
  p.psd_constraints.push_back(detail::chi_constraint("chi_c", CMatrix::Zero(4, 4), 1.0, blocks));
  p.psd_constraints.push_back(detail::chi_constraint("chi_c - chi_expt", -hermitize(chi_expt.chi), 1.0, blocks));
  PsdConstraint norm{"tr chi_c - 1", -CMatrix::Identity(1, 1), {}, {}};
  for (int b : blocks) norm.blocks.push_back({b, [](const CMatrix& s) { return CMatrix::Constant(1, 1, s.trace().real()); }});
  p.psd_constraints.push_back(std::move(norm));
  ModelResult r;
  r.solution = solve(p, opt);
  detail::require_optimal(r.solution, "quantum_robustness_beta");
  r.raw_value = r.solution.objective_value - 1.0;
  r.value = std::max(0.0, r.raw_value);
  r.model = detail::model_from_solution(r.solution, blocks);
  return r;
}

// Below this, alpha and beta are zero to solver accuracy and the
// decompositions would divide by noise.
inline constexpr double kDecompositionFloor = 1e-6;

// chi_Q = (chi_expt - chi_c)/alpha for alpha > 0.
inline ProcessMatrix quantum_part(const ProcessMatrix& chi_expt, const ModelResult& alpha) {
  if (!(alpha.raw_value > kDecompositionFloor)) throw OutOfRange("quantum_part: alpha is zero");
  return {(chi_expt.chi - classical_chi_from_model(alpha.model).chi) / alpha.raw_value};
}

// chi_noise = (chi_c (1 + beta) - chi_expt)/beta for beta > 0, where chi_c is
// the normalized classical process.
inline ProcessMatrix noise_part(const ProcessMatrix& chi_expt, const ModelResult& beta) {
  if (!(beta.raw_value > kDecompositionFloor)) throw OutOfRange("noise_part: beta is zero");
  return {(classical_chi_from_model(beta.model).chi - chi_expt.chi) / beta.raw_value};
}

// Reference values for a unitary target, phase independent. The solver
// reproduces them to about 3e-9; the closed forms are (1 + sqrt 3)/4,
// (3 + sqrt 3)/6 and (3 F_sc + 1)/4.
inline constexpr double kReferenceFEc = 0.6830127018922193;
inline constexpr double kReferenceFsc = 0.7886751345948128;
inline constexpr double kReferenceFcompC = 0.8415063509461096;
// Robustness of an ideal unitary process, 2 sqrt 3 - 3.
inline constexpr double kReferenceBetaIdeal = 0.4641016151377544;

struct ClassicalBounds {
  double f_ec = 0.0;      // max process fidelity of a classical process
  double f_sc = 0.0;      // (2 F_Ec + 1)/3
  double f_comp_c = 0.0;  // (3 F_sc + 1)/4
  HiddenStateModel model;
  ProcessMatrix chi_c;  // maximizer
  SdpSolution solution;
};

// Best classical approximation of a target unitary process:
// F_Ec = max tr(chi_c chi_rsp)  s.t.  sigma_lambda >= 0, chi_c >= 0, tr chi_c = 1.
inline ClassicalBounds classical_fidelity_bounds(const ProcessMatrix& chi_rsp, const SdpOptions& opt = {}) {
  detail::require_process(chi_rsp, "classical_fidelity_bounds");
  SdpProblem p;
  const auto blocks = detail::add_hidden_blocks(p);
  p.sense = Sense::Maximize;
  const CMatrix target = hermitize(chi_rsp.chi);
  for (int lambda = 1; lambda <= kHiddenStates; ++lambda)
    p.objective.push_back({blocks[lambda - 1], detail::pull_back(target, lambda)});
  p.equalities.push_back({"tr chi_c = 1", detail::total_weight_terms(blocks), {}, 1.0});
  p.psd_constraints.push_back(detail::chi_constraint("chi_c", CMatrix::Zero(4, 4), 1.0, blocks));
  ClassicalBounds r;
  r.solution = solve(p, opt);
  detail::require_optimal(r.solution, "classical_fidelity_bounds");
  r.f_ec = r.solution.objective_value;
  r.f_sc = (2.0 * r.f_ec + 1.0) / 3.0;
  r.f_comp_c = (3.0 * r.f_sc + 1.0) / 4.0;
  r.model = detail::model_from_solution(r.solution, blocks);
  r.chi_c = classical_chi_from_model(r.model);
  return r;
}

// F_s = (2 tr(chi_expt chi_rsp) + 1)/3.
inline double avg_state_fidelity(const ProcessMatrix& chi_expt, const ProcessMatrix& chi_rsp) {
  return (2.0 * process_fidelity(chi_expt, chi_rsp) + 1.0) / 3.0;
}

namespace detail {

inline void require_bases(std::pair<int, int> bases) {
  for (int q : {bases.first, bases.second})
    if (q < 1 || q > 3) throw OutOfRange("complementary_fidelity: basis index must be in 1..3");
  if (bases.first == bases.second) throw SameBasis("complementary_fidelity: the two bases must differ");
}

inline double complementary_from_outputs(const OutputSextet& s, double phi, std::pair<int, int> bases) {
  const CMatrix u = rotation_unitary(phi);
  double total = 0.0;
  for (int q : {bases.first, bases.second})
    for (int n = 0; n < 2; ++n) {
      const CMatrix& o = s.at(q, n);
      const double w = real_trace(o);
      if (w <= 0.0) continue;
      total += overlap_fidelity(u.adjoint() * o * u / w, pauli_eigenvector(q, n));
    }
  return total / 4.0;
}

}  // namespace detail

inline constexpr std::pair<int, int> kDefaultComplementaryBases{2, 3};

// F_comp = 1/4 sum_{q, n} <n|_q U^dagger E(|n>_q<n|) U |n>_q over the outputs
// simulated from the shared pair.
inline double complementary_fidelity(const TwoQubitDensity& rho_ab, double phi,
                                     std::pair<int, int> bases = kDefaultComplementaryBases) {
  detail::require_bases(bases);
  return detail::complementary_from_outputs(simulate_rsp_outputs(rho_ab, phi), phi, bases);
}

// Same functional for a channel given by its process matrix.
inline double complementary_fidelity(const ProcessMatrix& chi, double phi,
                                     std::pair<int, int> bases = kDefaultComplementaryBases) {
  detail::require_bases(bases);
  return detail::complementary_from_outputs(sextet_from_chi(chi), phi, bases);
}

// SW = 1 - max sum_lambda tr sigma_lambda  s.t.  sigma_lambda >= 0,
// rho'_nm - sum_{lambda: v_lambda[m] = (-1)^n} sigma_lambda >= 0.
inline ModelResult steerable_weight(const Assemblage& a, const SdpOptions& opt = {}) {
  SdpProblem p;
  const auto blocks = detail::add_hidden_blocks(p);
  p.sense = Sense::Maximize;
  p.objective = detail::total_weight_terms(blocks);
  const auto negate = [](const CMatrix& s) { CMatrix out = -s; return out; };
  for (int m = 1; m <= 3; ++m)
    for (int n = 0; n < 2; ++n) {
      PsdConstraint c{"rho'_" + setting_key(m, n), hermitize(a.members.at(m, n)), {}, {}};
      for (int lambda = 1; lambda <= kHiddenStates; ++lambda)
        if (hidden_response(lambda, m, n)) c.blocks.push_back({blocks[lambda - 1], negate});
      p.psd_constraints.push_back(std::move(c));
    }
  ModelResult r;
  r.solution = solve(p, opt);
  detail::require_optimal(r.solution, "steerable_weight");
  r.raw_value = 1.0 - r.solution.objective_value;
  r.value = std::clamp(r.raw_value, 0.0, 1.0);
  r.model = detail::model_from_solution(r.solution, blocks);
  return r;
}

inline ModelResult steerable_weight(const TwoQubitDensity& rho, const SdpOptions& opt = {}) {
  return steerable_weight(steered_assemblage(rho), opt);
}

struct BlochSample {
  Vec3 input = Vec3::Zero();
  double r = 0.0;    // output Bloch length under chi_expt
  double r_c = 0.0;  // output Bloch length under the classical process
};

// Haar-random pure state from a normalized complex Gaussian vector.
inline CVector haar_random_qubit(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVector v(2);
  for (Eigen::Index i = 0; i < 2; ++i) v[i] = cplx(g(rng), g(rng));
  return v / v.norm();
}

// Output Bloch vector normalized by the output trace.
inline double output_bloch_length(const ProcessMatrix& chi, const CMatrix& in) {
  const CMatrix out = hermitize(apply_chi(chi, in));
  const double w = real_trace(out);
  return w > 0.0 ? bloch_vector(out / w).norm() : 0.0;
}

inline std::vector<BlochSample> bloch_comparison(const ProcessMatrix& chi_expt, const ProcessMatrix& chi_c_best,
                                                 int count, std::uint64_t seed) {
  if (count < 0) throw OutOfRange("bloch_comparison: count must be non-negative");
  std::mt19937_64 rng(seed);
  std::vector<BlochSample> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const CMatrix in = projector(haar_random_qubit(rng));
    out.push_back({bloch_vector(in), output_bloch_length(chi_expt, in), output_bloch_length(chi_c_best, in)});
  }
  return out;
}

struct SteeringReport {
  double alpha = 0.0;
  double beta = 0.0;
  double process_fidelity = 0.0;
  double avg_state_fidelity = 0.0;
  double comp_fidelity = 0.0;
  double f_sc = 0.0;
  double f_comp_c = 0.0;
  bool beats_classical_state = false;  // F_s > F_sc
  bool beats_classical_comp = false;   // F_comp > F_comp,c
  double alpha_raw = 0.0;
  double beta_raw = 0.0;
};

// Full report for a measured process against the target R(phi). `bounds`
// must come from classical_fidelity_bounds(chi_target(phi)).
inline SteeringReport steering_report(const ProcessMatrix& chi_expt, double phi, const ClassicalBounds& bounds,
                                      const SdpOptions& opt = {}) {
  const ProcessMatrix target = chi_target(phi);
  SteeringReport r;
  const ModelResult a = quantum_composition_alpha(chi_expt, opt);
  const ModelResult b = quantum_robustness_beta(chi_expt, opt);
  r.alpha = a.value;
  r.alpha_raw = a.raw_value;
  r.beta = b.value;
  r.beta_raw = b.raw_value;
  r.process_fidelity = process_fidelity(chi_expt, target);
  r.avg_state_fidelity = avg_state_fidelity(chi_expt, target);
  r.comp_fidelity = complementary_fidelity(chi_expt, phi);
  r.f_sc = bounds.f_sc;
  r.f_comp_c = bounds.f_comp_c;
  r.beats_classical_state = r.avg_state_fidelity > r.f_sc;
  r.beats_classical_comp = r.comp_fidelity > r.f_comp_c;
  return r;
}

inline json report_to_json(const SteeringReport& r) {
  return json{{"alpha", r.alpha},
              {"beta", r.beta},
              {"alpha_raw", r.alpha_raw},
              {"beta_raw", r.beta_raw},
              {"process_fidelity", r.process_fidelity},
              {"avg_state_fidelity", r.avg_state_fidelity},
              {"comp_fidelity", r.comp_fidelity},
              {"f_sc", r.f_sc},
              {"f_comp_c", r.f_comp_c},
              {"criteria", {{"state_fidelity", r.beats_classical_state}, {"comp_fidelity", r.beats_classical_comp}}}};
}

}  // namespace rspsteer
