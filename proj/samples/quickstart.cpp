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

// Prints the steering report of the protocol run over a Werner pair.
//
//   ./quickstart [p_noise]

#include <cstdio>
#include <cstdlib>

#include "rspsteer.hpp"

int main(int argc, char** argv) {
  using namespace rspsteer;
  const double p = argc > 1 ? std::atof(argv[1]) : 0.2;
  const double phi = 0.0;

  const TwoQubitDensity rho = make_werner(p);
  const ProcessMatrix chi = process_tomography(simulate_rsp_outputs(rho, phi));
  const ClassicalBounds bounds = classical_fidelity_bounds(chi_target(phi));
  const SteeringReport r = steering_report(chi, phi, bounds);

  std::printf("resource            %s\n", rho.label.c_str());
  std::printf("alpha               %.4f\n", r.alpha);
  std::printf("beta                %.4f\n", r.beta);
  std::printf("avg state fidelity  %.4f  (classical bound %.4f)\n", r.avg_state_fidelity, r.f_sc);
  std::printf("comp fidelity       %.4f  (classical bound %.4f)\n", r.comp_fidelity, r.f_comp_c);
  std::printf("geometric discord   %.4f\n", geometric_discord(rho));
  std::printf("steerable weight    %.4f\n", steerable_weight(rho).value);
  return 0;
}
