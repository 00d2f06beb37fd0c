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

// Qubit and two-qubit states used as RSP resources: Bloch-vector algebra,
// Werner and walk-off noise models, local correlations and geometric discord.

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "rspsteer/linalg.hpp"
#include "rspsteer/log.hpp"

namespace rspsteer {

struct QubitDensity {
  CMatrix matrix;  // 2x2, PSD, trace one
  Vec3 bloch;      // (tr rho X, tr rho Y, tr rho Z)
};

struct TwoQubitDensity {
  CMatrix matrix;     // 4x4, ordering |ab> with qubit A as the high index
  std::string label;  // provenance: ideal, werner(p), walkoff(theta), ...
};

// Local Bloch vector of subsystem A and the correlation tensor
// A_ij = tr[rho (sigma_i (x) sigma_j)].
struct CorrelationData {
  Vec3 x = Vec3::Zero();
  Mat3 A = Mat3::Zero();
};

// Default white-noise weight of the created photon pairs.
inline constexpr double kDefaultPairNoise = 0.06;

inline Vec3 bloch_vector(const CMatrix& rho) {
  return {(rho * pauli(1)).trace().real(), (rho * pauli(2)).trace().real(),
          (rho * pauli(3)).trace().real()};
}

// (I + s.sigma)/2 for any |s| <= 1.
inline CMatrix matrix_from_bloch(const Vec3& s) {
  return 0.5 * (pauli(0) + s[0] * pauli(1) + s[1] * pauli(2) + s[2] * pauli(3));
}

inline QubitDensity qubit_from_matrix(const CMatrix& m) {
  require_state(m, "qubit_from_matrix");
  if (m.rows() != 2) throw NotAState("qubit_from_matrix: expected a 2x2 matrix");
  return {hermitize(m), bloch_vector(m)};
}

inline QubitDensity qubit_from_bloch(const Vec3& s) {
  if (s.norm() > 1.0 + kTol.unit_vector) throw OutOfRange("qubit_from_bloch: |s| > 1");
  return {matrix_from_bloch(s), s};
}

inline QubitDensity pure_from_bloch(const Vec3& s) {
  if (std::abs(s.norm() - 1.0) >= kTol.unit_vector) {
    std::ostringstream msg;
    msg << "pure_from_bloch: |s| = " << s.norm() << " is not 1";
    throw NotUnitVector(msg.str());
  }
  return {matrix_from_bloch(s), s};
}

inline CVector basis_ket(Eigen::Index dim, Eigen::Index index) {
  CVector v = CVector::Zero(dim);
  v[index] = 1.0;
  return v;
}

// (|01> - |10>)/sqrt(2) with the |01> amplitude real positive.
inline CVector singlet_vector() {
  CVector v = CVector::Zero(4);
  v[1] = 1.0 / std::numbers::sqrt2;
  v[2] = -1.0 / std::numbers::sqrt2;
  return v;
}

inline CMatrix singlet_matrix() { return projector(singlet_vector()); }

inline CMatrix maximally_mixed(Eigen::Index dim) { return identity(dim) / static_cast<double>(dim); }

// (|01><01| + |10><10|)/2: polarization state left by uncompensated walk-off.
inline CMatrix walkoff_mixture() {
  return 0.5 * (projector(basis_ket(4, 1)) + projector(basis_ket(4, 2)));
}

namespace detail {

inline void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw OutOfRange(std::string(what) + ": probability " + std::to_string(p) + " outside [0,1]");
  }
}

inline void require_angle(double theta_deg, const char* what) {
  if (!(theta_deg >= 0.0 && theta_deg <= 90.0)) {
    throw OutOfRange(std::string(what) + ": angle " + std::to_string(theta_deg) +
                     " deg outside [0,90]");
  }
}

inline std::string format_param(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

}  // namespace detail

inline TwoQubitDensity make_singlet() { return {singlet_matrix(), "ideal"}; }

// (1 - p)|Psi-><Psi-| + p I(x)I/4.
inline TwoQubitDensity make_werner(double p_noise) {
  detail::require_probability(p_noise, "make_werner");
  return {(1.0 - p_noise) * singlet_matrix() + p_noise * maximally_mixed(4),
          "werner(" + detail::format_param(p_noise) + ")"};
}

// sin^2(theta)|Psi-><Psi-| + cos^2(theta) rho_walkoff, theta in degrees.
inline TwoQubitDensity make_walkoff_state(double theta_deg) {
  detail::require_angle(theta_deg, "make_walkoff_state");
  const double t = theta_deg * std::numbers::pi / 180.0;
  const double s2 = std::sin(t) * std::sin(t);
  const double c2 = std::cos(t) * std::cos(t);
  return {s2 * singlet_matrix() + c2 * walkoff_mixture(),
          "walkoff(" + detail::format_param(theta_deg) + ")"};
}

// Mode-level construction of the compensated pair state: each photon
// carries a polarization qubit and a delay label from {0, t, 2t} (three
// orthogonal levels). The state after the half-wave plates (both at theta)
// and the correction crystals is
//
//   [ (c|0,2t> + s|1,t>)_a (s|0,t> - c|1,0>)_b
//     + e^{i phi} (s|0,t> - c|1,0>)_a (c|0,2t> + s|1,t>)_b ] / sqrt(2)
//
// with e^{i phi} = -1; the delay labels are then traced out. Agrees with
// make_walkoff_state at theta = 0 and 90 degrees. At intermediate angles the
// half-wave plates populate |00> and |11>, which the closed-form mixture does
// not contain.
inline TwoQubitDensity derive_walkoff_state(double theta_deg) {
  detail::require_angle(theta_deg, "derive_walkoff_state");
  constexpr int kDelays = 3;  // labels 0, t, 2t
  constexpr int kLocal = 2 * kDelays;
  const double t = theta_deg * std::numbers::pi / 180.0;
  const double c = std::cos(t);
  const double s = std::sin(t);
  auto photon = [](int pol, int delay) { return basis_ket(kLocal, pol * kDelays + delay); };
  const CVector early = c * photon(0, 2) + s * photon(1, 1);  // (c|0_2t> + s|1_t>)
  const CVector late = s * photon(0, 1) - c * photon(1, 0);   // (s|0_t> - c|1_0>)
  const cplx phase = -1.0;
  const CVector psi = (kron(early, late) + phase * kron(late, early)) / std::numbers::sqrt2;

  CMatrix rho = CMatrix::Zero(4, 4);
  auto amp = [&](int pa, int da, int pb, int db) {
    return psi[(pa * kDelays + da) * kLocal + pb * kDelays + db];
  };
  for (int pa = 0; pa < 2; ++pa)
    for (int pb = 0; pb < 2; ++pb)
      for (int qa = 0; qa < 2; ++qa)
        for (int qb = 0; qb < 2; ++qb) {
          cplx sum = 0.0;
          for (int da = 0; da < kDelays; ++da)
            for (int db = 0; db < kDelays; ++db) sum += amp(pa, da, pb, db) * std::conj(amp(qa, da, qb, db));
          rho(pa * 2 + pb, qa * 2 + qb) = sum;
        }
  return {hermitize(rho), "derived-walkoff(" + detail::format_param(theta_deg) + ")"};
}

// (1 - p) rho_ent(theta) + p I(x)I/4.
inline TwoQubitDensity make_noise_model_state(double theta_deg, double p = kDefaultPairNoise) {
  detail::require_angle(theta_deg, "make_noise_model_state");
  detail::require_probability(p, "make_noise_model_state");
  return {(1.0 - p) * make_walkoff_state(theta_deg).matrix + p * maximally_mixed(4),
          "noise-model(" + detail::format_param(theta_deg) + "," + detail::format_param(p) + ")"};
}

// Werner mixture built on the noisy compensated pair:
// (1 - p_noise) rho_noise(90) + p_noise I(x)I/4.
inline TwoQubitDensity make_noisy_werner(double p_noise, double pair_noise = kDefaultPairNoise) {
  detail::require_probability(p_noise, "make_noisy_werner");
  return {(1.0 - p_noise) * make_noise_model_state(90.0, pair_noise).matrix +
              p_noise * maximally_mixed(4),
          "noisy-werner(" + detail::format_param(p_noise) + ")"};
}

inline CorrelationData correlation_data(const CMatrix& rho) {
  CorrelationData out;
  const CMatrix id = pauli(0);
  for (int i = 1; i <= 3; ++i) {
    out.x[i - 1] = (rho * kron(pauli(i), id)).trace().real();
    for (int j = 1; j <= 3; ++j) out.A(i - 1, j - 1) = (rho * kron(pauli(i), pauli(j))).trace().real();
  }
  return out;
}

inline CorrelationData correlation_data(const TwoQubitDensity& rho) { return correlation_data(rho.matrix); }

// Returns a PSD version of a (possibly rounded) two-qubit matrix. States
// already PSD pass through; matrices within the fixture rounding slack are
// projected and the distance is logged; anything else is rejected.
inline CMatrix physical_matrix(const TwoQubitDensity& rho) {
  const CMatrix& m = rho.matrix;
  if (m.rows() != 4 || m.cols() != 4) throw NotAState("expected a 4x4 two-qubit matrix");
  if (hermiticity_residual(m) > kTol.hermiticity_check) {
    throw NotAState(rho.label + ": matrix is not Hermitian");
  }
  if (std::abs(real_trace(m) - 1.0) > kTol.fixture_slack) {
    throw NotAState(rho.label + ": trace differs from one");
  }
  const double lowest = min_eigenvalue(m);
  if (lowest >= -kTol.psd_slack && std::abs(real_trace(m) - 1.0) <= kTol.trace_slack) return hermitize(m);
  if (lowest < -kTol.fixture_slack) {
    throw NotAState(rho.label + ": eigenvalue " + std::to_string(lowest) + " is not a rounding artifact");
  }
  PsdProjection proj = psd_project_with_distance(m);
  proj.matrix /= real_trace(proj.matrix);
  log_message(LogLevel::Info, rho.label + ": PSD projection distance " + std::to_string(proj.distance));
  return proj.matrix;
}

// D = [ |x|^2 + tr(A^T A) - k_max ] / 4 with k_max the largest eigenvalue of
// K = x x^T + A A^T.
inline double geometric_discord(const CorrelationData& c) {
  const Mat3 K = c.x * c.x.transpose() + c.A * c.A.transpose();
  const Eigen::SelfAdjointEigenSolver<Mat3> eig(K);
  const double k_max = eig.eigenvalues()[2];
  const double d = 0.25 * (c.x.squaredNorm() + (c.A.transpose() * c.A).trace() - k_max);
  if (d < -kTol.discord_warning) {
    log_message(LogLevel::Warning, "geometric_discord: negative value " + std::to_string(d) + " clipped");
  }
  return std::max(0.0, d);
}

inline double geometric_discord(const TwoQubitDensity& rho) {
  return geometric_discord(correlation_data(physical_matrix(rho)));
}

struct NoiseFit {
  double p = 0.0;
  double fidelity = 0.0;
};

// Maximizes the Uhlmann fidelity between the Werner model
// (1 - p)|Psi-><Psi-| + p I/4 and rho over p in [0,1] by golden-section
// search (bracket width below 1e-4); the endpoints are also compared.
inline NoiseFit fit_noise_intensity(const TwoQubitDensity& rho) {
  const CMatrix target = physical_matrix(rho);
  auto fid = [&](double p) { return uhlmann_fidelity(make_werner(p).matrix, target); };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0;
  double hi = 1.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = fid(x1);
  double f2 = fid(x2);
  while (hi - lo > 1e-5) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = fid(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = fid(x1);
    }
  }
  NoiseFit best{0.5 * (lo + hi), fid(0.5 * (lo + hi))};
  for (double edge : {0.0, 1.0}) {
    const double f = fid(edge);
    if (f > best.fidelity) best = {edge, f};
  }
  return best;
}

}  // namespace rspsteer
