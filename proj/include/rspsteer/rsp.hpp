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

// Remote state preparation as a channel: the target rotation R(phi), the
// measure-and-correct protocol over an arbitrary shared pair, steered
// assemblages and the action of a Pauli-basis process matrix.

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "rspsteer/linalg.hpp"
#include "rspsteer/matrix_io.hpp"
#include "rspsteer/qstate.hpp"

namespace rspsteer {

// Process matrix in the Pauli basis (I, X, Y, Z):
// E(rho) = sum_jk chi_jk sigma_j rho sigma_k^dagger.
struct ProcessMatrix {
  CMatrix chi = CMatrix::Zero(4, 4);
};

// Six outputs E(|n>_m<n|) for m in {1,2,3} (X, Y, Z eigenbases), n in {0,1}.
struct OutputSextet {
  std::array<CMatrix, 6> outputs;

  CMatrix& at(int m, int n) { return outputs[slot(m, n)]; }
  const CMatrix& at(int m, int n) const { return outputs[slot(m, n)]; }

  static std::size_t slot(int m, int n) {
    if (m < 1 || m > 3 || n < 0 || n > 1) {
      throw OutOfRange("setting (m=" + std::to_string(m) + ", n=" + std::to_string(n) + ") out of range");
    }
    return static_cast<std::size_t>(2 * (m - 1) + n);
  }
};

// Bob's unnormalized conditional states for Alice's Pauli measurements.
// Same (m, n) indexing as OutputSextet.
struct Assemblage {
  OutputSextet members;

  double probability(int m, int n) const { return real_trace(members.at(m, n)); }
};

inline std::string setting_key(int m, int n) {
  return "m" + std::to_string(m) + "n" + std::to_string(n);
}

// R(phi) = (|0><0| + e^{i phi}|1><0| + |0><1| - e^{i phi}|1><1|)/sqrt(2).
inline CMatrix rotation_unitary(double phi) {
  const cplx e = std::polar(1.0, phi);
  CMatrix u(2, 2);
  u << 1.0, 1.0, e, -e;
  return u / std::numbers::sqrt2;
}

// |n>_m: eigenvector of sigma_m with eigenvalue (-1)^n.
inline CVector pauli_eigenvector(int m, int n) {
  OutputSextet::slot(m, n);
  const double r = 1.0 / std::numbers::sqrt2;
  const double sign = n == 0 ? 1.0 : -1.0;
  CVector v(2);
  switch (m) {
    case 1: v << r, sign * r; break;
    case 2: v << r, sign * r * kI; break;
    default: v << (n == 0 ? 1.0 : 0.0), (n == 0 ? 0.0 : 1.0); break;
  }
  return v;
}

inline CMatrix pauli_eigenprojector(int m, int n) { return projector(pauli_eigenvector(m, n)); }

// Pauli that swaps the two eigenvectors of basis m: Z for X and Y, X for Z.
inline CMatrix basis_flip(int m) { return pauli(m == 3 ? 1 : 3); }

// C_m = U F_m U^dagger, applied by Bob on the branch that needs correcting.
inline CMatrix correction_unitary(double phi, int m) {
  const CMatrix u = rotation_unitary(phi);
  return u * basis_flip(m) * u.adjoint();
}

inline QubitDensity ideal_rsp_apply(double phi, const QubitDensity& in) {
  const CMatrix u = rotation_unitary(phi);
  const CMatrix out = hermitize(u * in.matrix * u.adjoint());
  return {out, bloch_vector(out)};
}

// Protocol outputs for input label (n, m). Alice projects onto U|k>_m and
// Bob is left with tr_A[(U|k>_m<k|U^dagger (x) I) rho]. The branch
// k = n (+) 1 is kept as is; the branch k = n is corrected with C_m.
inline OutputSextet simulate_rsp_outputs(const CMatrix& rho_ab, double phi) {
  require_state(rho_ab, "simulate_rsp_outputs");
  if (rho_ab.rows() != 4) throw NotAState("simulate_rsp_outputs: expected a 4x4 state");
  const CMatrix u = rotation_unitary(phi);
  const CMatrix id = identity(2);
  OutputSextet out;
  for (int m = 1; m <= 3; ++m) {
    std::array<CMatrix, 2> branch;
    for (int k = 0; k < 2; ++k) {
      const CMatrix alice = u * pauli_eigenprojector(m, k) * u.adjoint();
      branch[k] = partial_trace(kron(alice, id) * rho_ab, Subsystem::A);
    }
    const CMatrix c = correction_unitary(phi, m);
    for (int n = 0; n < 2; ++n) out.at(m, n) = hermitize(branch[1 - n] + c * branch[n] * c.adjoint());
  }
  return out;
}

inline OutputSextet simulate_rsp_outputs(const TwoQubitDensity& rho_ab, double phi) {
  return simulate_rsp_outputs(physical_matrix(rho_ab), phi);
}

// rho'_nm = tr_A[(|n>_m<n| (x) I) rho].
inline Assemblage steered_assemblage(const CMatrix& rho_ab) {
  require_state(rho_ab, "steered_assemblage");
  if (rho_ab.rows() != 4) throw NotAState("steered_assemblage: expected a 4x4 state");
  Assemblage a;
  for (int m = 1; m <= 3; ++m)
    for (int n = 0; n < 2; ++n)
      a.members.at(m, n) =
          hermitize(partial_trace(kron(pauli_eigenprojector(m, n), identity(2)) * rho_ab, Subsystem::A));
  return a;
}

inline Assemblage steered_assemblage(const TwoQubitDensity& rho_ab) {
  return steered_assemblage(physical_matrix(rho_ab));
}

inline CMatrix apply_chi(const ProcessMatrix& p, const CMatrix& rho) {
  CMatrix out = CMatrix::Zero(2, 2);
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) {
      if (p.chi(j, k) == cplx(0.0)) continue;
      out += p.chi(j, k) * pauli(j) * rho * pauli(k).adjoint();
    }
  return out;
}

inline QubitDensity apply_chi(const ProcessMatrix& p, const QubitDensity& in) {
  const CMatrix out = hermitize(apply_chi(p, in.matrix));
  return {out, bloch_vector(out)};
}

inline json sextet_to_json(const OutputSextet& s) {
  json j = json::object();
  for (int m = 1; m <= 3; ++m)
    for (int n = 0; n < 2; ++n) j[setting_key(m, n)] = matrix_to_json(s.at(m, n));
  return j;
}

inline OutputSextet sextet_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("sextet json: expected an object");
  OutputSextet s;
  for (int m = 1; m <= 3; ++m)
    for (int n = 0; n < 2; ++n) {
      const std::string key = setting_key(m, n);
      if (!j.contains(key)) throw ParseError("sextet json: missing '" + key + "'");
      s.at(m, n) = matrix_from_json(j[key]);
      if (s.at(m, n).rows() != 2) throw ParseError("sextet json: '" + key + "' is not 2x2");
    }
  return s;
}

inline json process_to_json(const ProcessMatrix& p) {
  json j = matrix_to_json(p.chi);
  j["basis"] = {"I", "X", "Y", "Z"};
  return j;
}

inline ProcessMatrix process_from_json(const json& j) {
  ProcessMatrix p{matrix_from_json(j)};
  if (p.chi.rows() != 4) throw ParseError("process json: expected a 4x4 matrix");
  if (j.contains("basis") && j["basis"] != json{"I", "X", "Y", "Z"}) {
    throw ParseError("process json: basis must be [I, X, Y, Z]");
  }
  return p;
}

}  // namespace rspsteer
