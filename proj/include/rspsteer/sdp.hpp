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

// Small dense semidefinite programs over Hermitian matrix variables.
//
// A problem is stated with Hermitian PSD variable blocks, free real scalars,
// linear equalities and affine PSD constraints. It is compiled to a real
// symmetric standard form
//
//   minimize <C, X> + c^T u   s.t.  A(X) + B u = b,  X >= 0,  u free
//
// by giving each PSD constraint a slack block and embedding every Hermitian
// n x n block as the real 2n x 2n block [[Re, -Im], [Im, Re]]. The standard
// form is solved with an infeasible-start primal-dual path-following method
// (Nesterov-Todd scaling, Mehrotra predictor-corrector).

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rspsteer/linalg.hpp"
#include "rspsteer/matrix_io.hpp"

namespace rspsteer {

enum class Sense { Minimize, Maximize };

enum class SdpStatus { Optimal, MaxIter, NumericalFailure, Infeasible };

inline const char* to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal: return "Optimal";
    case SdpStatus::MaxIter: return "MaxIter";
    case SdpStatus::NumericalFailure: return "NumericalFailure";
    case SdpStatus::Infeasible: return "Infeasible";
  }
  return "?";
}

// Real-linear map from Hermitian matrices of one block to Hermitian matrices
// of the constraint's size.
using HermitianMap = std::function<CMatrix(const CMatrix&)>;

struct BlockTerm {
  int block = 0;
  CMatrix coefficient;  // Hermitian; contributes Re tr(coefficient * X_block)
};

struct ScalarTerm {
  int scalar = 0;
  double coefficient = 0.0;
};

struct LinearEquality {
  std::string name;
  std::vector<BlockTerm> blocks;
  std::vector<ScalarTerm> scalars;
  double rhs = 0.0;
};

struct MapTerm {
  int block = 0;
  HermitianMap map;
};

struct ScalarMatrixTerm {
  int scalar = 0;
  CMatrix matrix;  // Hermitian
};

// constant + sum_t map_t(X_block) + sum_s u_s * matrix_s  >=  0.
struct PsdConstraint {
  std::string name;
  CMatrix constant;
  std::vector<MapTerm> blocks;
  std::vector<ScalarMatrixTerm> scalars;
};

struct VariableBlock {
  std::string name;
  int dim = 1;
};

struct SdpProblem {
  std::vector<VariableBlock> blocks;
  std::vector<std::string> free_scalars;
  Sense sense = Sense::Minimize;
  std::vector<BlockTerm> objective;
  std::vector<ScalarTerm> objective_scalars;
  std::vector<LinearEquality> equalities;
  std::vector<PsdConstraint> psd_constraints;

  int add_block(std::string name, int dim) {
    if (dim < 1) throw OutOfRange("SdpProblem: block dimension must be positive");
    blocks.push_back({std::move(name), dim});
    return static_cast<int>(blocks.size()) - 1;
  }

  int add_free_scalar(std::string name) {
    free_scalars.push_back(std::move(name));
    return static_cast<int>(free_scalars.size()) - 1;
  }
};

struct SdpOptions {
  double target_tolerance = 1e-8;
  double accept_tolerance = 1e-7;
  int max_iterations = 200;
  double step_fraction = 0.95;
  double divergence = 1e9;
};

struct SdpIterate {
  int iteration = 0;
  double primal_objective = 0.0;  // standard-form (minimization) values
  double dual_objective = 0.0;
  double complementarity = 0.0;  // <X, Z>
  double relative_gap = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double primal_step = 0.0;
  double dual_step = 0.0;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::NumericalFailure;
  std::vector<CMatrix> values;  // one per variable block
  std::vector<double> scalars;  // free scalars
  double objective_value = 0.0;  // in the problem's own sense
  double dual_value = 0.0;
  double duality_gap = 0.0;
  double feasibility_residual = 0.0;
  int iterations = 0;
  std::vector<SdpIterate> history;
};

// Real symmetric standard form. coefficient[i][k] is the matrix of row i on
// block k; an empty matrix stands for zero.
struct RealSdp {
  std::vector<int> block_dims;
  std::vector<RMatrix> cost;
  std::vector<std::vector<RMatrix>> coefficient;
  RVector rhs;
  RMatrix free_columns;  // rows x free scalars
  RVector free_cost;
  int user_blocks = 0;  // leading blocks that embed the problem's variables
  bool maximize = false;

  int rows() const { return static_cast<int>(rhs.size()); }
};

// [[P, -Q], [Q, P]] for H = P + iQ.
inline RMatrix embed_hermitian(const CMatrix& h) {
  const Eigen::Index n = h.rows();
  RMatrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = h.real();
  out.topRightCorner(n, n) = -h.imag();
  out.bottomLeftCorner(n, n) = h.imag();
  out.bottomRightCorner(n, n) = h.real();
  return out;
}

// Hermitian matrix whose embedding is closest to a real symmetric 2n x 2n Y.
inline CMatrix extract_hermitian(const RMatrix& y) {
  const Eigen::Index n = y.rows() / 2;
  const RMatrix p = 0.5 * (y.topLeftCorner(n, n) + y.bottomRightCorner(n, n));
  const RMatrix q = 0.5 * (y.bottomLeftCorner(n, n) - y.topRightCorner(n, n));
  CMatrix h(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) h(i, j) = cplx(p(i, j), q(i, j));
  return hermitize(h);
}

// Orthonormal basis of n x n Hermitian matrices under Re tr(A B):
// E_ii, (E_ij + E_ji)/sqrt(2), i(E_ij - E_ji)/sqrt(2) for i < j.
inline std::vector<CMatrix> hermitian_basis(int n) {
  std::vector<CMatrix> out;
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    CMatrix e = CMatrix::Zero(n, n);
    e(i, i) = 1.0;
    out.push_back(e);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      CMatrix s = CMatrix::Zero(n, n);
      s(i, j) = r;
      s(j, i) = r;
      out.push_back(s);
      CMatrix a = CMatrix::Zero(n, n);
      a(i, j) = kI * r;
      a(j, i) = -kI * r;
      out.push_back(a);
    }
  return out;
}

inline double herm_inner(const CMatrix& a, const CMatrix& b) { return (a.adjoint() * b).trace().real(); }

namespace detail {

inline void require_hermitian_coefficient(const CMatrix& m, Eigen::Index dim, const std::string& where) {
  if (m.rows() != dim || m.cols() != dim) throw OutOfRange(where + ": coefficient has wrong shape");
  if (hermiticity_residual(m) > kTol.hermiticity_check) throw NonHermitianInput(where + ": coefficient is not Hermitian");
}

inline void require_block(const SdpProblem& p, int block, const std::string& where) {
  if (block < 0 || block >= static_cast<int>(p.blocks.size())) throw OutOfRange(where + ": unknown block");
}

inline void require_scalar(const SdpProblem& p, int scalar, const std::string& where) {
  if (scalar < 0 || scalar >= static_cast<int>(p.free_scalars.size())) throw OutOfRange(where + ": unknown scalar");
}

}  // namespace detail

inline RealSdp embed_real(const SdpProblem& p) {
  RealSdp out;
  out.maximize = p.sense == Sense::Maximize;
  const int n_user = static_cast<int>(p.blocks.size());
  out.user_blocks = n_user;
  for (const auto& b : p.blocks) out.block_dims.push_back(2 * b.dim);
  for (const auto& c : p.psd_constraints) {
    if (c.constant.rows() < 1 || c.constant.rows() != c.constant.cols()) {
      throw OutOfRange("psd constraint '" + c.name + "': constant must be square");
    }
    out.block_dims.push_back(2 * static_cast<int>(c.constant.rows()));
  }
  const int total_dim = std::accumulate(out.block_dims.begin(), out.block_dims.end(), 0);
  if (total_dim > 256) throw OutOfRange("SdpProblem: embedded dimension " + std::to_string(total_dim) + " exceeds 256");
  const std::size_t n_blocks = out.block_dims.size();
  const double sign = out.maximize ? -1.0 : 1.0;

  out.cost.resize(n_blocks);
  for (std::size_t k = 0; k < n_blocks; ++k) out.cost[k] = RMatrix::Zero(out.block_dims[k], out.block_dims[k]);
  for (const auto& t : p.objective) {
    detail::require_block(p, t.block, "objective");
    detail::require_hermitian_coefficient(t.coefficient, p.blocks[t.block].dim, "objective");
    out.cost[t.block] += sign * 0.5 * embed_hermitian(hermitize(t.coefficient));
  }
  const int n_free = static_cast<int>(p.free_scalars.size());
  out.free_cost = RVector::Zero(n_free);
  for (const auto& t : p.objective_scalars) {
    detail::require_scalar(p, t.scalar, "objective");
    out.free_cost[t.scalar] += sign * t.coefficient;
  }

  std::vector<std::vector<RMatrix>> rows;
  std::vector<double> rhs;
  std::vector<std::vector<std::pair<int, double>>> free_entries;

  for (const auto& eq : p.equalities) {
    std::vector<RMatrix> row(n_blocks);
    for (const auto& t : eq.blocks) {
      detail::require_block(p, t.block, "equality '" + eq.name + "'");
      detail::require_hermitian_coefficient(t.coefficient, p.blocks[t.block].dim, "equality '" + eq.name + "'");
      const RMatrix e = 0.5 * embed_hermitian(hermitize(t.coefficient));
      if (row[t.block].size() == 0) row[t.block] = e; else row[t.block] += e;
    }
    std::vector<std::pair<int, double>> fe;
    for (const auto& t : eq.scalars) {
      detail::require_scalar(p, t.scalar, "equality '" + eq.name + "'");
      fe.emplace_back(t.scalar, t.coefficient);
    }
    rows.push_back(std::move(row));
    rhs.push_back(eq.rhs);
    free_entries.push_back(std::move(fe));
  }

  for (std::size_t ci = 0; ci < p.psd_constraints.size(); ++ci) {
    const PsdConstraint& c = p.psd_constraints[ci];
    const int k = static_cast<int>(c.constant.rows());
    const std::string where = "psd constraint '" + c.name + "'";
    detail::require_hermitian_coefficient(c.constant, k, where);
    const std::vector<CMatrix> out_basis = hermitian_basis(k);
    // images[t][q] = map_t(basis_q of the term's block)
    std::vector<std::vector<CMatrix>> images;
    std::vector<std::vector<CMatrix>> in_bases;
    for (const auto& t : c.blocks) {
      detail::require_block(p, t.block, where);
      const std::vector<CMatrix> basis = hermitian_basis(p.blocks[t.block].dim);
      std::vector<CMatrix> img;
      for (const auto& bq : basis) {
        CMatrix v = t.map(bq);
        if (v.rows() != k || v.cols() != k) throw OutOfRange(where + ": map output has wrong shape");
        if (hermiticity_residual(v) > kTol.hermiticity_check) throw NonHermitianInput(where + ": map output is not Hermitian");
        img.push_back(std::move(v));
      }
      images.push_back(std::move(img));
      in_bases.push_back(basis);
    }
    for (const auto& s : c.scalars) {
      detail::require_scalar(p, s.scalar, where);
      detail::require_hermitian_coefficient(s.matrix, k, where);
    }
    const std::size_t slack = static_cast<std::size_t>(n_user) + ci;
    for (const auto& er : out_basis) {
      // <E_r, S> - sum_t <E_r, map_t(X_t)> - sum_s u_s <E_r, M_s> = <E_r, constant>
      std::vector<RMatrix> row(n_blocks);
      row[slack] = 0.5 * embed_hermitian(er);
      for (std::size_t t = 0; t < c.blocks.size(); ++t) {
        const int blk = c.blocks[t].block;
        const int d = p.blocks[blk].dim;
        CMatrix adj = CMatrix::Zero(d, d);
        for (std::size_t q = 0; q < in_bases[t].size(); ++q) adj += herm_inner(er, images[t][q]) * in_bases[t][q];
        const RMatrix e = -0.5 * embed_hermitian(adj);
        if (row[blk].size() == 0) row[blk] = e; else row[blk] += e;
      }
      std::vector<std::pair<int, double>> fe;
      for (const auto& s : c.scalars) fe.emplace_back(s.scalar, -herm_inner(er, s.matrix));
      rows.push_back(std::move(row));
      rhs.push_back(herm_inner(er, c.constant));
      free_entries.push_back(std::move(fe));
    }
  }

  const int m = static_cast<int>(rows.size());
  out.coefficient = std::move(rows);
  out.rhs = Eigen::Map<const RVector>(rhs.data(), m);
  out.free_columns = RMatrix::Zero(m, n_free);
  for (int i = 0; i < m; ++i)
    for (const auto& [s, v] : free_entries[i]) out.free_columns(i, s) += v;
  return out;
}

inline json standard_form_summary(const RealSdp& f) {
  return json{{"blocks", f.block_dims},
              {"user_blocks", f.user_blocks},
              {"constraints", f.rows()},
              {"free_scalars", f.free_cost.size()},
              {"sense", f.maximize ? "maximize" : "minimize"}};
}

namespace detail {

using BlockVec = std::vector<RMatrix>;

inline double inner(const BlockVec& a, const BlockVec& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k].array() * b[k].array()).sum();
  return s;
}

inline double frob(const BlockVec& a) { return std::sqrt(inner(a, a)); }

inline RVector apply_a(const RealSdp& f, const BlockVec& x) {
  RVector out = RVector::Zero(f.rows());
  for (int i = 0; i < f.rows(); ++i)
    for (std::size_t k = 0; k < x.size(); ++k)
      if (f.coefficient[i][k].size() != 0) out[i] += (f.coefficient[i][k].array() * x[k].array()).sum();
  return out;
}

inline BlockVec apply_at(const RealSdp& f, const RVector& y) {
  BlockVec out(f.block_dims.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = RMatrix::Zero(f.block_dims[k], f.block_dims[k]);
  for (int i = 0; i < f.rows(); ++i)
    for (std::size_t k = 0; k < out.size(); ++k)
      if (f.coefficient[i][k].size() != 0) out[k] += y[i] * f.coefficient[i][k];
  return out;
}

inline RMatrix sym(const RMatrix& m) { return 0.5 * (m + m.transpose()); }

// Largest step t in (0, inf] with L L^T + t D PSD, given the Cholesky factor L.
inline double max_step(const Eigen::LLT<RMatrix>& chol, const RMatrix& d) {
  const RMatrix l_inv_d = chol.matrixL().solve(d);
  const RMatrix s = chol.matrixL().solve(l_inv_d.transpose());
  const Eigen::SelfAdjointEigenSolver<RMatrix> eig(sym(s), Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues()[0];
  return lo < 0.0 ? -1.0 / lo : INFINITY;
}

struct NtScaling {
  RMatrix g;       // W = G G^T
  RMatrix w;
  RVector lambda;  // G^{-1} X G^{-T} = G^T Z G = diag(lambda)
};

inline bool nt_scaling(const RMatrix& x, const RMatrix& z, NtScaling& out) {
  const Eigen::LLT<RMatrix> lx(x);
  const Eigen::LLT<RMatrix> lz(z);
  if (lx.info() != Eigen::Success || lz.info() != Eigen::Success) return false;
  const RMatrix Lx = lx.matrixL();
  const RMatrix Lz = lz.matrixL();
  const Eigen::JacobiSVD<RMatrix> svd(Lz.transpose() * Lx, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector d = svd.singularValues();
  if (!(d.minCoeff() > 0.0)) return false;
  out.lambda = d;
  out.g = Lx * svd.matrixV() * d.cwiseSqrt().cwiseInverse().asDiagonal();
  out.w = out.g * out.g.transpose();
  return true;
}

}  // namespace detail

inline SdpSolution solve_real(const RealSdp& f, const SdpOptions& opt = {}) {
  using detail::BlockVec;
  const std::size_t nb = f.block_dims.size();
  const int m = f.rows();
  const int nf = static_cast<int>(f.free_cost.size());
  const double n_total = std::accumulate(f.block_dims.begin(), f.block_dims.end(), 0.0);

  const double norm_b = f.rhs.norm();
  const double norm_c = std::sqrt(detail::inner(f.cost, f.cost) + f.free_cost.squaredNorm());

  // Starting point: scaled identities.
  double max_a = 0.0;
  double xi = std::max(10.0, std::sqrt(n_total));
  for (int i = 0; i < m; ++i) {
    double ai = 0.0;
    for (std::size_t k = 0; k < nb; ++k)
      if (f.coefficient[i][k].size() != 0) ai += f.coefficient[i][k].squaredNorm();
    ai = std::sqrt(ai);
    max_a = std::max(max_a, ai);
    xi = std::max(xi, (1.0 + std::abs(f.rhs[i])) / (1.0 + ai));
  }
  const double eta = std::max({10.0, std::sqrt(n_total), norm_c, max_a});

  BlockVec x(nb), z(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    x[k] = xi * RMatrix::Identity(f.block_dims[k], f.block_dims[k]);
    z[k] = eta * RMatrix::Identity(f.block_dims[k], f.block_dims[k]);
  }
  RVector y = RVector::Zero(m);
  RVector u = RVector::Zero(nf);

  SdpSolution sol;
  double last_gap = INFINITY;
  double last_res = INFINITY;

  auto finish = [&](SdpStatus status, int iterations) {
    sol.status = status;
    sol.iterations = iterations;
    const double pobj = detail::inner(f.cost, x) + f.free_cost.dot(u);
    const double dobj = f.rhs.dot(y);
    sol.objective_value = f.maximize ? -pobj : pobj;
    sol.dual_value = f.maximize ? -dobj : dobj;
    sol.duality_gap = last_gap;
    sol.feasibility_residual = last_res;
    sol.values.clear();
    for (int k = 0; k < f.user_blocks; ++k) sol.values.push_back(extract_hermitian(x[k]));
    sol.scalars.assign(u.data(), u.data() + nf);
    return sol;
  };

  for (int iter = 0; iter <= opt.max_iterations; ++iter) {
    const RVector rp = f.rhs - detail::apply_a(f, x) - f.free_columns * u;
    BlockVec rd = detail::apply_at(f, y);
    for (std::size_t k = 0; k < nb; ++k) rd[k] = f.cost[k] - rd[k] - z[k];
    const RVector rf = f.free_cost - f.free_columns.transpose() * y;

    const double pobj = detail::inner(f.cost, x) + f.free_cost.dot(u);
    const double dobj = f.rhs.dot(y);
    const double comp = detail::inner(x, z);
    const double mu = comp / n_total;
    const double pinf = rp.norm() / (1.0 + norm_b);
    const double dinf = std::sqrt(detail::inner(rd, rd) + rf.squaredNorm()) / (1.0 + norm_c);
    const double rel_gap = std::max(comp, std::abs(pobj - dobj)) / (1.0 + std::abs(pobj) + std::abs(dobj));
    last_gap = rel_gap;
    last_res = std::max(pinf, dinf);

    SdpIterate rec{iter, pobj, dobj, comp, rel_gap, pinf, dinf, 0.0, 0.0};

    if (rel_gap < opt.target_tolerance && last_res < opt.target_tolerance) {
      sol.history.push_back(rec);
      return finish(SdpStatus::Optimal, iter);
    }
    if (dobj > opt.divergence && pinf > opt.accept_tolerance) {
      sol.history.push_back(rec);
      return finish(SdpStatus::Infeasible, iter);
    }
    if (iter == opt.max_iterations) {
      sol.history.push_back(rec);
      break;
    }
    const bool acceptable = rel_gap < opt.accept_tolerance && last_res < opt.accept_tolerance;

    // Scaling and Schur complement.
    std::vector<detail::NtScaling> nt(nb);
    for (std::size_t k = 0; k < nb; ++k) {
      if (!detail::nt_scaling(x[k], z[k], nt[k])) {
        sol.history.push_back(rec);
        return finish(acceptable ? SdpStatus::Optimal : SdpStatus::NumericalFailure, iter);
      }
    }
    RMatrix schur = RMatrix::Zero(m, m);
    for (std::size_t k = 0; k < nb; ++k) {
      const RMatrix& w = nt[k].w;
      std::vector<int> active;
      for (int i = 0; i < m; ++i)
        if (f.coefficient[i][k].size() != 0) active.push_back(i);
      std::vector<RMatrix> waw(active.size());
      for (std::size_t a = 0; a < active.size(); ++a) waw[a] = w * f.coefficient[active[a]][k] * w;
      for (std::size_t a = 0; a < active.size(); ++a)
        for (std::size_t b = a; b < active.size(); ++b) {
          const double v = (waw[a].array() * f.coefficient[active[b]][k].array()).sum();
          schur(active[a], active[b]) += v;
          if (a != b) schur(active[b], active[a]) += v;
        }
    }
    // Near optimality the Schur matrix becomes ill-conditioned; a tiny
    // diagonal shift is added when the plain factorization breaks down.
    Eigen::LLT<RMatrix> schur_llt(schur);
    const double schur_scale = std::max(schur.diagonal().cwiseAbs().maxCoeff(), 1e-300);
    for (double shift = 1e-14; schur_llt.info() != Eigen::Success && shift <= 1e-8; shift *= 100.0) {
      schur_llt.compute(schur + shift * schur_scale * RMatrix::Identity(m, m));
    }
    if (schur_llt.info() != Eigen::Success) {
      sol.history.push_back(rec);
      return finish(acceptable ? SdpStatus::Optimal : SdpStatus::NumericalFailure, iter);
    }
    Eigen::LLT<RMatrix> free_llt;
    RMatrix minv_b;
    if (nf > 0) {
      minv_b = schur_llt.solve(f.free_columns);
      free_llt.compute(f.free_columns.transpose() * minv_b);
      if (free_llt.info() != Eigen::Success) {
        sol.history.push_back(rec);
        return finish(acceptable ? SdpStatus::Optimal : SdpStatus::NumericalFailure, iter);
      }
    }

    // Solves for the direction given the scaled complementarity target rs.
    BlockVec wrdw(nb);
    for (std::size_t k = 0; k < nb; ++k) wrdw[k] = nt[k].w * rd[k] * nt[k].w;
    const RVector a_wrdw = detail::apply_a(f, wrdw);
    auto direction = [&](const BlockVec& rs, BlockVec& dx, BlockVec& dz, RVector& dy, RVector& du) {
      BlockVec kmat(nb);
      for (std::size_t k = 0; k < nb; ++k) kmat[k] = nt[k].g * rs[k] * nt[k].g.transpose();
      const RVector r = rp - detail::apply_a(f, kmat) + a_wrdw;
      if (nf > 0) {
        const RVector minv_r = schur_llt.solve(r);
        du = free_llt.solve(f.free_columns.transpose() * minv_r - rf);
        dy = minv_r - minv_b * du;
      } else {
        du = RVector::Zero(0);
        dy = schur_llt.solve(r);
      }
      dz = detail::apply_at(f, dy);
      dx.resize(nb);
      for (std::size_t k = 0; k < nb; ++k) {
        dz[k] = detail::sym(rd[k] - dz[k]);
        dx[k] = detail::sym(kmat[k] - nt[k].w * dz[k] * nt[k].w);
      }
    };
    auto step_lengths = [&](const BlockVec& dx, const BlockVec& dz, double& ap, double& ad) {
      ap = INFINITY;
      ad = INFINITY;
      for (std::size_t k = 0; k < nb; ++k) {
        ap = std::min(ap, detail::max_step(Eigen::LLT<RMatrix>(x[k]), dx[k]));
        ad = std::min(ad, detail::max_step(Eigen::LLT<RMatrix>(z[k]), dz[k]));
      }
    };

    // Predictor.
    BlockVec rs(nb);
    for (std::size_t k = 0; k < nb; ++k) rs[k] = -RMatrix(nt[k].lambda.asDiagonal());
    BlockVec dx, dz;
    RVector dy, du;
    direction(rs, dx, dz, dy, du);
    double ap = 0.0, ad = 0.0;
    step_lengths(dx, dz, ap, ad);
    ap = std::min(1.0, ap);
    ad = std::min(1.0, ad);
    double comp_aff = 0.0;
    for (std::size_t k = 0; k < nb; ++k) comp_aff += ((x[k] + ap * dx[k]).array() * (z[k] + ad * dz[k]).array()).sum();
    const double expo = std::max(1.0, 3.0 * std::min(ap, ad) * std::min(ap, ad));
    const double sigma = std::min(1.0, std::pow(std::max(comp_aff, 0.0) / comp, expo));

    // Corrector.
    for (std::size_t k = 0; k < nb; ++k) {
      const RMatrix ginv = nt[k].g.inverse();
      const RMatrix dx_s = ginv * dx[k] * ginv.transpose();
      const RMatrix dz_s = nt[k].g.transpose() * dz[k] * nt[k].g;
      const RVector& lam = nt[k].lambda;
      RMatrix rhs = -(dx_s * dz_s + dz_s * dx_s);
      for (Eigen::Index i = 0; i < lam.size(); ++i) rhs(i, i) += 2.0 * (sigma * mu - lam[i] * lam[i]);
      RMatrix r(lam.size(), lam.size());
      for (Eigen::Index i = 0; i < lam.size(); ++i)
        for (Eigen::Index j = 0; j < lam.size(); ++j) r(i, j) = rhs(i, j) / (lam[i] + lam[j]);
      rs[k] = detail::sym(r);
    }
    direction(rs, dx, dz, dy, du);
    step_lengths(dx, dz, ap, ad);
    ap = std::min(1.0, opt.step_fraction * ap);
    ad = std::min(1.0, opt.step_fraction * ad);
    rec.primal_step = ap;
    rec.dual_step = ad;
    sol.history.push_back(rec);

    for (std::size_t k = 0; k < nb; ++k) {
      x[k] = detail::sym(x[k] + ap * dx[k]);
      z[k] = detail::sym(z[k] + ad * dz[k]);
    }
    u += ap * du;
    y += ad * dy;
    if (!std::isfinite(y.sum()) || !std::isfinite(u.sum())) {
      return finish(SdpStatus::NumericalFailure, iter + 1);
    }
  }
  const bool acceptable = last_gap < opt.accept_tolerance && last_res < opt.accept_tolerance;
  return finish(acceptable ? SdpStatus::Optimal : SdpStatus::MaxIter, opt.max_iterations);
}

inline SdpSolution solve(const SdpProblem& p, const SdpOptions& opt = {}) { return solve_real(embed_real(p), opt); }

}  // namespace rspsteer
