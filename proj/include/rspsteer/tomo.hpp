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

// Simulated counting statistics, single-qubit state tomography and Pauli-basis
// process tomography from the six protocol outputs.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rspsteer/linalg.hpp"
#include "rspsteer/log.hpp"
#include "rspsteer/qstate.hpp"
#include "rspsteer/rsp.hpp"

namespace rspsteer {

struct CountRecord {
  int basis = 3;    // m in {1,2,3}
  int outcome = 0;  // n in {0,1}
  std::int64_t counts = 0;
  std::int64_t shots = 1;
};

// Binomial draws of outcome n = 0 in each Pauli basis; returns six records
// ordered (m, n) = (1,0), (1,1), ..., (3,1).
inline std::vector<CountRecord> simulate_counts(const QubitDensity& rho, std::int64_t shots,
                                                std::uint64_t seed) {
  if (shots < 1) throw OutOfRange("simulate_counts: shots must be positive");
  std::mt19937_64 rng(seed);
  std::vector<CountRecord> out;
  for (int m = 1; m <= 3; ++m) {
    const double p0 = std::clamp(overlap_fidelity(rho.matrix, pauli_eigenvector(m, 0)), 0.0, 1.0);
    std::binomial_distribution<std::int64_t> draw(shots, p0);
    const std::int64_t c0 = draw(rng);
    out.push_back({m, 0, c0, shots});
    out.push_back({m, 1, shots - c0, shots});
  }
  return out;
}

inline void write_counts_csv(std::ostream& os, const std::vector<CountRecord>& records) {
  os << "basis,outcome,counts,shots\n";
  for (const auto& r : records) os << r.basis << ',' << r.outcome << ',' << r.counts << ',' << r.shots << '\n';
}

inline std::vector<CountRecord> read_counts_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "basis,outcome,counts,shots") {
    throw ParseError("counts csv: missing header 'basis,outcome,counts,shots'");
  }
  std::vector<CountRecord> out;
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    CountRecord r;
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(fields >> r.basis >> c1 >> r.outcome >> c2 >> r.counts >> c3 >> r.shots) || c1 != ',' ||
        c2 != ',' || c3 != ',') {
      throw ParseError("counts csv: malformed line " + std::to_string(line_no));
    }
    if (r.basis < 1 || r.basis > 3 || r.outcome < 0 || r.outcome > 1 || r.counts < 0 || r.shots < 1 ||
        r.counts > r.shots) {
      throw ParseError("counts csv: invalid values on line " + std::to_string(line_no));
    }
    out.push_back(r);
  }
  return out;
}

namespace detail {

// Outcome frequencies f[m-1][n] per basis; missing complementary outcomes are
// inferred from the shot count.
inline std::array<std::array<double, 2>, 3> basis_frequencies(const std::vector<CountRecord>& records) {
  std::array<std::array<double, 2>, 3> f{};
  std::array<std::array<bool, 2>, 3> seen{};
  for (const auto& r : records) {
    if (r.basis < 1 || r.basis > 3 || r.outcome < 0 || r.outcome > 1) {
      throw IncompleteSettings("state_tomography: record with invalid setting");
    }
    if (r.shots < 1 || r.counts < 0 || r.counts > r.shots) {
      throw IncompleteSettings("state_tomography: record with invalid counts");
    }
    f[r.basis - 1][r.outcome] = static_cast<double>(r.counts) / static_cast<double>(r.shots);
    seen[r.basis - 1][r.outcome] = true;
  }
  for (int m = 0; m < 3; ++m) {
    if (!seen[m][0] && !seen[m][1]) {
      throw IncompleteSettings("state_tomography: no records for basis " + std::to_string(m + 1));
    }
    if (!seen[m][0]) f[m][0] = 1.0 - f[m][1];
    if (!seen[m][1]) f[m][1] = 1.0 - f[m][0];
  }
  return f;
}

inline double log_likelihood(const std::array<std::array<double, 2>, 3>& f, const CMatrix& rho) {
  double ll = 0.0;
  for (int m = 1; m <= 3; ++m)
    for (int n = 0; n < 2; ++n) {
      if (f[m - 1][n] <= 0.0) continue;
      const double p = std::max(overlap_fidelity(rho, pauli_eigenvector(m, n)), 1e-300);
      ll += f[m - 1][n] * std::log(p);
    }
  return ll;
}

}  // namespace detail

struct MleOptions {
  double tolerance = 1e-10;
  int max_iterations = 500;
};

// Linear inversion from the measured Pauli frequencies. When the result is a
// valid state it already reproduces every frequency and is returned; otherwise
// the RrhoR fixed-point iteration maximizes the likelihood over states.
inline QubitDensity state_tomography(const std::vector<CountRecord>& records, const MleOptions& opt = {}) {
  const auto f = detail::basis_frequencies(records);
  Vec3 s;
  for (int m = 0; m < 3; ++m) s[m] = f[m][0] - f[m][1];
  if (s.norm() <= 1.0) return {matrix_from_bloch(s), s};

  CMatrix rho = maximally_mixed(2);
  double ll = detail::log_likelihood(f, rho);
  for (int it = 0; it < opt.max_iterations; ++it) {
    CMatrix r = CMatrix::Zero(2, 2);
    for (int m = 1; m <= 3; ++m)
      for (int n = 0; n < 2; ++n) {
        const CMatrix proj = pauli_eigenprojector(m, n);
        const double p = std::max(real_trace(rho * proj), 1e-300);
        r += (f[m - 1][n] / p / 3.0) * proj;
      }
    rho = hermitize(r * rho * r);
    rho /= real_trace(rho);
    const double next = detail::log_likelihood(f, rho);
    const double change = std::abs(next - ll);
    ll = next;
    if (change < opt.tolerance) break;
  }
  return {rho, bloch_vector(rho)};
}

// Pauli coefficients c_j = tr(sigma_j U)/2 of a 2x2 operator.
inline CVector pauli_coefficients(const CMatrix& op) {
  CVector c(4);
  for (int j = 0; j < 4; ++j) c[j] = (pauli(j) * op).trace() / 2.0;
  return c;
}

// chi of the unitary channel rho -> R(phi) rho R(phi)^dagger.
inline ProcessMatrix chi_target(double phi) {
  const CVector c = pauli_coefficients(rotation_unitary(phi));
  return {c * c.adjoint()};
}

// chi with E(rho) = sum_j chi_jj sigma_j rho sigma_j for chi = diag(1,1,1,1)/4.
inline ProcessMatrix chi_depolarizing() { return {identity(4) / 4.0}; }

inline ProcessMatrix chi_identity() {
  ProcessMatrix p;
  p.chi(0, 0) = 1.0;
  return p;
}

// chi_ab = <<sigma_a|J|sigma_b>>/4 from the images of |i><j|, with
// J = sum_ij |i><j| (x) E(|i><j|) and |sigma>> = sum_i |i> (x) sigma|i>.
inline CMatrix chi_from_elementary_images(const CMatrix& e00, const CMatrix& e01, const CMatrix& e10,
                                          const CMatrix& e11) {
  CMatrix choi(4, 4);
  choi << e00, e01, e10, e11;
  CMatrix v(4, 4);
  for (int a = 0; a < 4; ++a) {
    const CMatrix s = pauli(a);
    v.col(a) << s.col(0), s.col(1);
  }
  return v.adjoint() * choi * v / 4.0;
}

// Linear part of process tomography: E(I) = mean_m(O_0m + O_1m),
// E(sigma_m) = O_0m - O_1m, mapped to chi. No Hermitization, repair or
// normalization; linear in the sextet.
inline CMatrix chi_from_sextet_linear(const OutputSextet& s) {
  CMatrix e_id = CMatrix::Zero(2, 2);
  for (int m = 1; m <= 3; ++m) e_id += s.at(m, 0) + s.at(m, 1);
  e_id /= 3.0;
  const CMatrix ex = s.at(1, 0) - s.at(1, 1);
  const CMatrix ey = s.at(2, 0) - s.at(2, 1);
  const CMatrix ez = s.at(3, 0) - s.at(3, 1);
  return chi_from_elementary_images((e_id + ez) / 2.0, (ex + kI * ey) / 2.0, (ex - kI * ey) / 2.0,
                                    (e_id - ez) / 2.0);
}

inline ProcessMatrix process_tomography(const OutputSextet& s) {
  for (const auto& o : s.outputs) {
    if (o.rows() != 2 || o.cols() != 2) throw InconsistentSextet("process_tomography: outputs must be 2x2");
  }
  double lo = INFINITY;
  double hi = -INFINITY;
  for (int m = 1; m <= 3; ++m) {
    const double t = real_trace(s.at(m, 0) + s.at(m, 1));
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  if (hi - lo > 0.05) {
    throw InconsistentSextet("process_tomography: basis traces differ by " + std::to_string(hi - lo));
  }
  CMatrix chi = hermitize(chi_from_sextet_linear(s));
  if (min_eigenvalue(chi) < -kTol.psd_slack) {
    const PsdProjection proj = psd_project_with_distance(chi);
    log_message(LogLevel::Info, "process_tomography: PSD repair distance " + std::to_string(proj.distance));
    chi = proj.matrix;
  }
  chi /= real_trace(chi);
  return {chi};
}

inline double process_fidelity(const ProcessMatrix& a, const ProcessMatrix& b) {
  return (a.chi * b.chi).trace().real();
}

// Max-entry residual of sum_jk chi_jk sigma_k sigma_j - I.
inline double trace_preservation_residual(const ProcessMatrix& p) {
  CMatrix acc = CMatrix::Zero(2, 2);
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) acc += p.chi(j, k) * pauli(k) * pauli(j);
  return (acc - identity(2)).cwiseAbs().maxCoeff();
}

// Sextet of a process given by its chi (noiseless inputs |n>_m).
inline OutputSextet sextet_from_chi(const ProcessMatrix& p) {
  OutputSextet s;
  for (int m = 1; m <= 3; ++m)
    for (int n = 0; n < 2; ++n) s.at(m, n) = hermitize(apply_chi(p, pauli_eigenprojector(m, n)));
  return s;
}

// Tomographs each output with simulated counts: the state is estimated from
// `shots` counts per basis and rescaled by the output's trace. Per-output
// seeds are drawn from a generator seeded with `seed`.
inline OutputSextet sample_sextet(const OutputSextet& exact, std::int64_t shots, std::uint64_t seed) {
  OutputSextet out;
  std::mt19937_64 seeder(seed);
  for (int m = 1; m <= 3; ++m)
    for (int n = 0; n < 2; ++n) {
      const std::uint64_t output_seed = seeder();
      const CMatrix& o = exact.at(m, n);
      const double weight = real_trace(o);
      if (weight <= 0.0) {
        out.at(m, n) = CMatrix::Zero(2, 2);
        continue;
      }
      const CMatrix normalized = o / weight;
      const QubitDensity q{normalized, bloch_vector(normalized)};
      const auto records = simulate_counts(q, shots, output_seed);
      out.at(m, n) = weight * state_tomography(records).matrix;
    }
  return out;
}

}  // namespace rspsteer
