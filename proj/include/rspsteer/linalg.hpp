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

// Dense complex matrix kernel for the small (2..16 dimensional) Hermitian
// matrices that appear throughout the toolkit: states, process matrices,
// Choi matrices and SDP blocks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rspsteer/errors.hpp"
#include "rspsteer/tolerances.hpp"

namespace rspsteer {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr cplx kI{0.0, 1.0};

// Eigendecomposition of a Hermitian matrix. Eigenvalues ascend; column k of
// `vectors` belongs to `values[k]`.
struct HermEig {
  RVector values;
  CMatrix vectors;
};

inline double hermiticity_residual(const CMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline CMatrix hermitize(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

inline double real_trace(const CMatrix& m) { return m.trace().real(); }

// Pauli operator basis sigma_0..sigma_3 = I, X, Y, Z.
inline CMatrix pauli(int k) {
  CMatrix p(2, 2);
  switch (k) {
    case 0: p << 1, 0, 0, 1; break;
    case 1: p << 0, 1, 1, 0; break;
    case 2: p << 0, -kI, kI, 0; break;
    case 3: p << 1, 0, 0, -1; break;
    default: throw OutOfRange("pauli index must be in 0..3, got " + std::to_string(k));
  }
  return p;
}

inline CMatrix identity(Eigen::Index dim) { return CMatrix::Identity(dim, dim); }

inline CMatrix projector(const CVector& v) { return v * v.adjoint(); }

namespace detail {

// Rewrites the columns of `vectors` inside [first, last) so that they span
// the same space but are built by Gram-Schmidt over the projections of the
// canonical basis vectors e_0, e_1, ... in index order.
inline void canonicalize_eigenspace(CMatrix& vectors, Eigen::Index first,
                                    Eigen::Index last) {
  const Eigen::Index n = vectors.rows();
  const Eigen::Index k = last - first;
  const CMatrix block = vectors.middleCols(first, k);
  const CMatrix proj = block * block.adjoint();
  std::vector<CVector> chosen;
  for (Eigen::Index i = 0; i < n && static_cast<Eigen::Index>(chosen.size()) < k; ++i) {
    CVector w = proj.col(i);
    for (const auto& c : chosen) w -= c * c.dot(w);
    // second pass keeps the basis orthonormal to working precision
    for (const auto& c : chosen) w -= c * c.dot(w);
    const double norm = w.norm();
    if (norm > 1e-6) chosen.push_back(w / norm);
  }
  for (Eigen::Index j = 0; j < k; ++j) vectors.col(first + j) = chosen[j];
}

// Fixes the free phase of an eigenvector: the first component with modulus
// above 1e-8 becomes real and positive.
inline void fix_phase(Eigen::Ref<CVector> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-8) {
      v *= std::conj(v[i]) / std::abs(v[i]);
      return;
    }
  }
}

}  // namespace detail

// Hermitian eigendecomposition with deterministic eigenvectors: inside each
// degenerate eigenspace the basis is the Gram-Schmidt orthonormalization of
// the projected canonical basis vectors, and each vector's phase is fixed.
inline HermEig eig_hermitian(const CMatrix& m) {
  if (m.rows() != m.cols()) throw NonHermitianInput("eig_hermitian: matrix is not square");
  const double residual = hermiticity_residual(m);
  if (!(residual <= kTol.hermiticity_check)) {
    throw NonHermitianInput("eig_hermitian: symmetry residual " + std::to_string(residual));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitize(m));
  if (solver.info() != Eigen::Success) {
    throw NonHermitianInput("eig_hermitian: eigensolver did not converge");
  }
  HermEig out{solver.eigenvalues(), solver.eigenvectors()};
  const Eigen::Index n = out.values.size();
  const double scale = std::max(1.0, out.values.cwiseAbs().maxCoeff());
  Eigen::Index first = 0;
  while (first < n) {
    Eigen::Index last = first + 1;
    while (last < n && out.values[last] - out.values[last - 1] <= kTol.degeneracy * scale) ++last;
    if (last - first > 1) detail::canonicalize_eigenspace(out.vectors, first, last);
    first = last;
  }
  for (Eigen::Index j = 0; j < n; ++j) detail::fix_phase(out.vectors.col(j));
  return out;
}

inline RVector eigenvalues_hermitian(const CMatrix& m) { return eig_hermitian(m).values; }

inline double min_eigenvalue(const CMatrix& m) { return eigenvalues_hermitian(m)[0]; }

inline double max_eigenvalue(const CMatrix& m) {
  const RVector v = eigenvalues_hermitian(m);
  return v[v.size() - 1];
}

// Kronecker product; (A (x) B)[i*dimB + k, j*dimB + l] = A[i,j] * B[k,l].
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

enum class Subsystem { A, B };

// Partial trace of an operator on C^dimA (x) C^dimB; `traced` names the
// factor that is removed.
inline CMatrix partial_trace(const CMatrix& m, Eigen::Index dim_a, Eigen::Index dim_b,
                             Subsystem traced) {
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b) {
    throw OutOfRange("partial_trace: matrix dimension does not match dimA*dimB");
  }
  if (traced == Subsystem::B) {
    CMatrix out = CMatrix::Zero(dim_a, dim_a);
    for (Eigen::Index i = 0; i < dim_a; ++i)
      for (Eigen::Index j = 0; j < dim_a; ++j)
        for (Eigen::Index k = 0; k < dim_b; ++k) out(i, j) += m(i * dim_b + k, j * dim_b + k);
    return out;
  }
  CMatrix out = CMatrix::Zero(dim_b, dim_b);
  for (Eigen::Index k = 0; k < dim_b; ++k)
    for (Eigen::Index l = 0; l < dim_b; ++l)
      for (Eigen::Index i = 0; i < dim_a; ++i) out(k, l) += m(i * dim_b + k, i * dim_b + l);
  return out;
}

// Two-qubit convenience form.
inline CMatrix partial_trace(const CMatrix& m, Subsystem traced) {
  if (m.rows() != 4) throw OutOfRange("partial_trace: expected a 4x4 matrix");
  return partial_trace(m, 2, 2, traced);
}

struct PsdProjection {
  CMatrix matrix;
  double distance = 0.0;  // max-entry distance between input and result
};

// Clips negative eigenvalues at zero and rescales to the input trace.
inline PsdProjection psd_project_with_distance(const CMatrix& m) {
  const double tr = real_trace(m);
  if (!(tr > 0.0)) throw ZeroTrace("psd_project: trace " + std::to_string(tr) + " is not positive");
  const HermEig e = eig_hermitian(m);
  if (e.values[0] >= 0.0) return {hermitize(m), hermiticity_residual(m) / 2};
  RVector clipped = e.values.cwiseMax(0.0);
  const double clipped_trace = clipped.sum();
  if (!(clipped_trace > 0.0)) throw ZeroTrace("psd_project: no positive spectrum to keep");
  clipped *= tr / clipped_trace;
  CMatrix out = e.vectors * clipped.cast<cplx>().asDiagonal() * e.vectors.adjoint();
  out = hermitize(out);
  return {out, (out - m).cwiseAbs().maxCoeff()};
}

inline CMatrix psd_project(const CMatrix& m) { return psd_project_with_distance(m).matrix; }

// Principal square root of a PSD matrix; eigenvalues in [-sqrt_clip, 0) are
// treated as zero, anything more negative is rejected.
inline CMatrix sqrt_psd(const CMatrix& m, double clip = kTol.sqrt_clip) {
  const HermEig e = eig_hermitian(m);
  if (e.values[0] < -clip) {
    throw NotAState("sqrt_psd: eigenvalue " + std::to_string(e.values[0]) + " below clip tolerance");
  }
  const RVector root = e.values.cwiseMax(0.0).cwiseSqrt();
  return e.vectors * root.cast<cplx>().asDiagonal() * e.vectors.adjoint();
}

// True when m is Hermitian, PSD and trace-one within the given slack.
inline bool is_state(const CMatrix& m, double slack = kTol.psd_slack) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  if (hermiticity_residual(m) > kTol.hermiticity_check) return false;
  if (std::abs(m.trace() - cplx(1.0)) > std::max(slack, kTol.trace_slack)) return false;
  return min_eigenvalue(m) >= -slack;
}

inline void require_state(const CMatrix& m, const char* what, double slack = kTol.psd_slack) {
  if (!is_state(m, slack)) throw NotAState(std::string(what) + ": argument is not a density matrix");
}

// tr(rho * psi) for a rank-one projector psi.
inline double overlap_fidelity(const CMatrix& rho, const CMatrix& psi) {
  return (rho * psi).trace().real();
}

inline double overlap_fidelity(const CMatrix& rho, const CVector& psi) {
  return psi.dot(rho * psi).real();
}

// tr sqrt(sqrt(rho) sigma sqrt(rho)), evaluated as the nuclear norm of
// sqrt(rho) sqrt(sigma).
inline double uhlmann_fidelity(const CMatrix& rho, const CMatrix& sigma) {
  require_state(rho, "uhlmann_fidelity");
  require_state(sigma, "uhlmann_fidelity");
  const CMatrix product = sqrt_psd(rho, kTol.psd_slack) * sqrt_psd(sigma, kTol.psd_slack);
  Eigen::JacobiSVD<CMatrix> svd(product);
  return std::min(1.0, svd.singularValues().sum());
}

}  // namespace rspsteer
