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

namespace rspsteer {

// Every numerical tolerance used outside the SDP solver lives here.
struct Tolerances {
  double hermiticity = 1e-12;        // max|M - M^dagger| for Hermitian-flagged values
  double hermiticity_check = 1e-9;   // above this, inputs are rejected as non-Hermitian
  double psd_slack = 1e-9;           // eigenvalues down to -psd_slack count as >= 0
  double trace_slack = 1e-9;         // |tr(rho) - 1| allowed for a state
  double reconstruction = 1e-10;     // eigendecomposition reconstruction
  double sqrt_clip = 1e-10;          // eigenvalues in [-sqrt_clip, 0) are clipped before sqrt
  double degeneracy = 1e-10;         // eigenvalues closer than this share an eigenspace
  double unit_vector = 1e-9;         // | |s| - 1 | for pure-state Bloch vectors
  double fixture_slack = 1e-2;       // rounding slack of the printed two-decimal fixtures
  double discord_warning = 1e-6;     // negative discord below -this is reported
};

inline constexpr Tolerances kTol{};

}  // namespace rspsteer
