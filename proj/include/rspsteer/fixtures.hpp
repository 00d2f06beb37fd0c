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

// Measured two-qubit density matrices printed to two decimals. Stored
// verbatim (trace one, Hermitian, not always PSD); operations that need a
// physical state go through physical_matrix, which projects them.

#include <string>

#include "rspsteer/linalg.hpp"
#include "rspsteer/matrix_io.hpp"
#include "rspsteer/qstate.hpp"

namespace rspsteer {

namespace detail {

inline CMatrix hermitian_from_upper(const cplx (&upper)[10]) {
  CMatrix m(4, 4);
  int k = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      m(i, j) = upper[k++];
      m(j, i) = std::conj(m(i, j));
    }
  return m;
}

}  // namespace detail

// Compensated source, theta_HWP = 90 deg.
inline TwoQubitDensity fixture_rho_expt_90() {
  const cplx u[10] = {{0.02, 0},     {-0.01, 0.02}, {-0.01, -0.01}, {0, 0.01},     {0.49, 0},
                      {-0.45, 0.03}, {0.01, 0.01},  {0.48, 0},      {0.01, -0.02}, {0.01, 0}};
  return {detail::hermitian_from_upper(u), "fixture(rho_expt_90)"};
}

// theta_HWP = 40 deg.
inline TwoQubitDensity fixture_rho_expt_40() {
  const cplx u[10] = {{0.18, 0},     {0.13, -0.04}, {-0.04, 0.02}, {-0.01, 0.09},  {0.40, 0},
                      {-0.28, 0.04}, {0.01, -0.01}, {0.30, 0},     {-0.08, 0.05}, {0.12, 0}};
  return {detail::hermitian_from_upper(u), "fixture(rho_expt_40)"};
}

// Werner-type state with p_noise = 0.5.
inline TwoQubitDensity fixture_rho_w_expt_05() {
  const cplx u[10] = {{0.13, 0},     {-0.01, 0.01}, {0, -0.01},    {0, 0.01},     {0.38, 0},
                      {-0.23, 0.01}, {0, 0.01},     {0.36, 0},     {0.01, -0.01}, {0.13, 0}};
  return {detail::hermitian_from_upper(u), "fixture(rho_w_expt_05)"};
}

// Reads a two-qubit matrix file; the "label" key is used when present.
inline TwoQubitDensity read_two_qubit_file(const std::string& path) {
  const json j = read_json_file(path);
  CMatrix m = matrix_from_json(j);
  if (m.rows() != 4) throw NotAState("'" + path + "': expected a 4x4 matrix");
  std::string label = "file(" + path + ")";
  if (j.contains("label") && j["label"].is_string()) label = j["label"].get<std::string>();
  return {std::move(m), std::move(label)};
}

}  // namespace rspsteer
