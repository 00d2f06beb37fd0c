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

#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rspsteer/fixtures.hpp"
#include "rspsteer/linalg.hpp"
#include "rspsteer/matrix_io.hpp"
#include "rspsteer/qstate.hpp"

namespace rspsteer {
namespace {

CMatrix diag(std::initializer_list<double> v) {
  CMatrix m = CMatrix::Zero(v.size(), v.size());
  int i = 0;
  for (double x : v) m(i, i) = x, ++i;
  return m;
}

TEST(EigHermitian, PauliZSpectrum) {
  const HermEig e = eig_hermitian(pauli(3));
  EXPECT_NEAR(e.values[0], -1.0, 1e-14);
  EXPECT_NEAR(e.values[1], 1.0, 1e-14);
}

TEST(EigHermitian, MaximallyMixedIsFourfoldDegenerate) {
  const HermEig e = eig_hermitian(identity(4) / 4.0);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(e.values[i], 0.25, 1e-15);
  // tie-breaking picks the canonical basis
  EXPECT_LT((e.vectors - identity(4)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(EigHermitian, LargestEigenvalueOfDiagonalK) {
  EXPECT_NEAR(max_eigenvalue(diag({0.151, 0.151, 0.884})), 0.884, 1e-14);
}

TEST(EigHermitian, ReconstructionAndOrthonormality) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = (trial % 4 == 0) ? 2 : (trial % 4 == 1) ? 4 : (trial % 4 == 2) ? 8 : 16;
    const CMatrix m = oracle::random_hermitian(rng, n);
    const HermEig e = eig_hermitian(m);
    const CMatrix rebuilt = e.vectors * e.values.cast<cplx>().asDiagonal() * e.vectors.adjoint();
    EXPECT_LT((rebuilt - m).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((e.vectors.adjoint() * e.vectors - identity(n)).cwiseAbs().maxCoeff(), 1e-10);
    for (int i = 1; i < n; ++i) EXPECT_LE(e.values[i - 1], e.values[i]);
  }
}

TEST(EigHermitian, DeterministicInDegenerateSpaces) {
  std::mt19937_64 rng(5);
  const CMatrix u = oracle::random_unitary(rng, 4);
  const CMatrix m = u * diag({0.1, 0.1, 0.4, 0.4}) * u.adjoint();
  const HermEig a = eig_hermitian(m);
  const HermEig b = eig_hermitian(CMatrix(m));
  EXPECT_EQ((a.vectors - b.vectors).cwiseAbs().maxCoeff(), 0.0);
  const CMatrix rebuilt = a.vectors * a.values.cast<cplx>().asDiagonal() * a.vectors.adjoint();
  EXPECT_LT((rebuilt - m).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(EigHermitian, RejectsNonHermitian) {
  CMatrix m = pauli(3);
  m(0, 1) = 1e-6;
  EXPECT_THROW(eig_hermitian(m), NonHermitianInput);
}

TEST(Kron, Examples) {
  EXPECT_EQ(kron(identity(2), identity(2)), identity(4));
  EXPECT_EQ(kron(pauli(3), pauli(3)), diag({1, -1, -1, 1}));
  const CMatrix p0 = diag({1, 0});
  const CMatrix p1 = diag({0, 1});
  EXPECT_EQ(kron(p0, p1), diag({0, 1, 0, 0}));
}

TEST(Kron, MatchesIndependentProductAndIsAssociative) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix a = oracle::random_matrix(rng, 2);
    const CMatrix b = oracle::random_matrix(rng, 2);
    const CMatrix c = oracle::random_matrix(rng, 4);
    EXPECT_LT((kron(a, b) - oracle::kron(a, b)).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((kron(kron(a, b), c) - kron(a, kron(b, c))).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(std::abs(kron(a, c).trace() - a.trace() * c.trace()), 1e-12);
  }
}

TEST(PartialTrace, ProductStatesAndSinglet) {
  std::mt19937_64 rng(7);
  const CMatrix ra = oracle::random_state(rng, 2);
  const CMatrix rb = oracle::random_state(rng, 2);
  EXPECT_LT((partial_trace(kron(ra, rb), Subsystem::B) - ra).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((partial_trace(kron(ra, rb), Subsystem::A) - rb).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((partial_trace(singlet_matrix(), Subsystem::A) - identity(2) / 2.0).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((partial_trace(walkoff_mixture(), Subsystem::A) - identity(2) / 2.0).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(PartialTrace, AgreesWithOracleOnRandomOperators) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix m = oracle::random_matrix(rng, 4);
    EXPECT_LT((partial_trace(m, Subsystem::B) - oracle::trace_out_b(m, 2, 2)).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_LT((partial_trace(m, Subsystem::A) - oracle::trace_out_a(m, 2, 2)).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_LT(std::abs(partial_trace(m, Subsystem::A).trace() - m.trace()), 1e-13);
    const CMatrix a = oracle::random_matrix(rng, 2);
    const CMatrix b = oracle::random_matrix(rng, 4);
    EXPECT_LT((partial_trace(kron(a, b), 2, 4, Subsystem::B) - a * b.trace()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(PsdProject, PsdInputUnchanged) {
  std::mt19937_64 rng(1);
  const CMatrix rho = oracle::random_state(rng, 4);
  EXPECT_LT((psd_project(rho) - rho).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PsdProject, ClipsAndRescales) {
  const CMatrix out = psd_project(diag({1.1, -0.1}));
  EXPECT_LT((out - diag({1.0, 0.0})).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(PsdProject, IdempotentAndTracePreserving) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix m = oracle::random_hermitian(rng, 4) + 3.0 * identity(4) / 4.0;
    if (m.trace().real() <= 0) continue;
    const CMatrix p = psd_project(m);
    EXPECT_NEAR(p.trace().real(), m.trace().real(), 1e-12);
    EXPECT_GE(min_eigenvalue(p), -1e-12);
    EXPECT_LT((psd_project(p) - p).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(PsdProject, RoundedFixtureStaysClose) {
  const CMatrix raw = fixture_rho_expt_90().matrix;
  EXPECT_LT(min_eigenvalue(raw), 0.0);
  const CMatrix p = psd_project(raw);
  EXPECT_GE(min_eigenvalue(p), -1e-12);
  // tr sqrt(sqrt(p) raw sqrt(p)), with the raw fixture's tiny negative part clipped
  const CMatrix root = sqrt_psd(p);
  const RVector ev = eigenvalues_hermitian(hermitize(root * raw * root));
  double f = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) f += std::sqrt(std::max(0.0, ev[i]));
  EXPECT_GT(f, 0.999);
}

TEST(PsdProject, RejectsNonPositiveTrace) { EXPECT_THROW(psd_project(diag({0.5, -0.5})), ZeroTrace); }

TEST(OverlapFidelity, FixturesAgainstSinglet) {
  EXPECT_NEAR(overlap_fidelity(fixture_rho_expt_90().matrix, singlet_vector()), 0.94, 0.02);
  EXPECT_NEAR(overlap_fidelity(fixture_rho_expt_40().matrix, singlet_vector()), 0.63, 0.02);
  EXPECT_NEAR(overlap_fidelity(fixture_rho_w_expt_05().matrix, singlet_vector()), 0.59, 0.02);
}

TEST(UhlmannFidelity, SelfAndPureStates) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix rho = oracle::random_state(rng, 4);
    EXPECT_NEAR(uhlmann_fidelity(rho, rho), 1.0, 1e-7);
    const CVector a = oracle::random_pure(rng, 2);
    const CVector b = oracle::random_pure(rng, 2);
    EXPECT_NEAR(uhlmann_fidelity(projector(a), projector(b)), std::abs(a.dot(b)), 1e-7);
  }
}

TEST(UhlmannFidelity, SymmetricAndSquaresToOverlapForPureArgument) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix rho = oracle::random_state(rng, 4);
    const CMatrix sigma = oracle::random_state(rng, 4);
    EXPECT_NEAR(uhlmann_fidelity(rho, sigma), uhlmann_fidelity(sigma, rho), 1e-10);
    const CVector psi = oracle::random_pure(rng, 4);
    const double f = uhlmann_fidelity(rho, projector(psi));
    // sqrt of the projector's zero eigenvalues amplifies rounding to ~1e-8
    EXPECT_NEAR(f * f, overlap_fidelity(rho, psi), 1e-7);
  }
}

TEST(UhlmannFidelity, NoiseModelAgainstRoundedFixture) {
  const CMatrix fixture = psd_project(fixture_rho_expt_90().matrix);
  EXPECT_NEAR(uhlmann_fidelity(make_noise_model_state(90.0, 0.06).matrix, fixture), 0.99, 0.005);
}

TEST(UhlmannFidelity, RejectsNonStates) {
  EXPECT_THROW(uhlmann_fidelity(diag({1.1, -0.1}), diag({1, 0})), NotAState);
  EXPECT_THROW(uhlmann_fidelity(diag({1, 0}), diag({0.5, 0.6})), NotAState);
}

TEST(SingletSymmetry, InvariantUnderIdenticalLocalUnitaries) {
  std::mt19937_64 rng(8);
  const CVector psi = singlet_vector();
  for (int trial = 0; trial < 100; ++trial) {
    const CMatrix v = oracle::random_unitary(rng, 2);
    const CVector rotated = kron(v, v) * psi;
    EXPECT_LT((rotated - v.determinant() * psi).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(MatrixJson, RoundTrip) {
  std::mt19937_64 rng(10);
  const CMatrix m = oracle::random_hermitian(rng, 4);
  const CMatrix back = matrix_from_json(json::parse(matrix_to_json(m).dump()));
  EXPECT_EQ((back - m).cwiseAbs().maxCoeff(), 0.0);
}

TEST(MatrixJson, RejectsMalformedInput) {
  EXPECT_THROW(matrix_from_json(json::parse(R"({"dim":2,"re":[[1,0],[0,1]]})")), ParseError);
  EXPECT_THROW(matrix_from_json(json::parse(R"({"dim":2,"re":[[1,0,0],[0,1,0]],"im":[[0,0],[0,0]]})")), ParseError);
  EXPECT_THROW(matrix_from_json(json::parse(R"({"dim":2,"re":[[1,0],[0,1]],"im":[[0,0]]})")), ParseError);
  EXPECT_THROW(matrix_from_json(json::parse(R"({"dim":2,"re":[[1,0],[0,"x"]],"im":[[0,0],[0,0]]})")), ParseError);
  EXPECT_THROW(matrix_from_json(json::parse(R"({"dim":0,"re":[],"im":[]})")), ParseError);
}

}  // namespace
}  // namespace rspsteer
