// Copyright 2026 The sympleq Authors
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

// Truncated Fock-space oracle: mode operators as d^n x d^n matrices, the
// Hamiltonian operator, and the Heisenberg-picture check
// e^{iH} a_k e^{-iH} = sum_j E_kj a_j + F_kj a_j^dagger + s_k.

#pragma once

#include <cstdlib>
#include <string_view>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sympleq/core.hpp"

namespace sympleq {

inline constexpr Index kDefaultMaxFockDim = 4096;

/// Cap on d^n: SYMPLEQ_MAX_DIM if set to a positive integer, else 4096.
inline Index max_fock_dim_from_env() {
  if (const char* v = std::getenv("SYMPLEQ_MAX_DIM")) {
    char* end = nullptr;
    const long long x = std::strtoll(v, &end, 10);
    if (end != v && *end == '\0' && x > 0) return static_cast<Index>(x);
  }
  return kDefaultMaxFockDim;
}

class FockSpace {
 public:
  FockSpace(Index n, Index d, Index max_dim = kDefaultMaxFockDim) : n_(n), d_(d) {
    if (n < 1 || d < 2) fail(ErrorKind::DimensionMismatch, "Fock space needs n >= 1 and d >= 2");
    Index dim = 1;
    for (Index k = 0; k < n; ++k) {
      if (dim > max_dim / d) {
        std::ostringstream os;
        os << "Fock dimension " << d << "^" << n << " exceeds the cap " << max_dim;
        fail(ErrorKind::DimensionOverflow, os.str());
      }
      dim *= d;
    }
    dim_ = dim;
    // Mode 0 is the most significant digit of the basis index.
    excitation_.assign(static_cast<std::size_t>(dim_), 0);
    for (Index i = 0; i < dim_; ++i) {
      Index rest = i, total = 0;
      for (Index k = 0; k < n_; ++k) {
        total += rest % d_;
        rest /= d_;
      }
      excitation_[static_cast<std::size_t>(i)] = total;
    }
    CMatrix a1 = CMatrix::Zero(d_, d_);
    for (Index m = 1; m < d_; ++m) a1(m - 1, m) = std::sqrt(static_cast<double>(m));
    for (Index k = 0; k < n_; ++k) {
      CMatrix op = CMatrix::Identity(1, 1);
      for (Index j = 0; j < n_; ++j) op = kron(op, j == k ? a1 : CMatrix::Identity(d_, d_));
      a_.push_back(std::move(op));
    }
  }

  Index n() const { return n_; }
  Index d() const { return d_; }
  Index dim() const { return dim_; }
  const CMatrix& a(Index k) const { return a_.at(static_cast<std::size_t>(k)); }
  Index excitation(Index basis) const { return excitation_[static_cast<std::size_t>(basis)]; }

  /// Basis indices with total excitation strictly below `level`.
  std::vector<Index> subspace(Index level) const {
    std::vector<Index> idx;
    for (Index i = 0; i < dim_; ++i)
      if (excitation(i) < level) idx.push_back(i);
    return idx;
  }

  /// Largest deviation from [a_j, a_k] = 0 and [a_j, a_k^dagger] = delta_jk
  /// on the states with total excitation below d - 1.
  double commutator_residual() const {
    const std::vector<Index> idx = subspace(d_ - 1);
    const CMatrix id = CMatrix::Identity(dim_, dim_);
    double worst = 0.0;
    for (Index j = 0; j < n_; ++j)
      for (Index k = 0; k < n_; ++k) {
        const CMatrix c1 = a(j) * a(k) - a(k) * a(j);
        const CMatrix c2 = a(j) * a(k).adjoint() - a(k).adjoint() * a(j) - (j == k ? id : CMatrix::Zero(dim_, dim_));
        worst = std::max({worst, restricted_max(c1, idx), restricted_max(c2, idx)});
      }
    return worst;
  }

  static double restricted_max(const CMatrix& m, const std::vector<Index>& idx) {
    double worst = 0.0;
    for (Index i : idx)
      for (Index j : idx) worst = std::max(worst, std::abs(m(i, j)));
    return worst;
  }

 private:
  static CMatrix kron(const CMatrix& x, const CMatrix& y) {
    CMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Index i = 0; i < x.rows(); ++i)
      for (Index j = 0; j < x.cols(); ++j) out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    return out;
  }

  Index n_;
  Index d_;
  Index dim_ = 0;
  std::vector<Index> excitation_;
  std::vector<CMatrix> a_;
};

/// The operator 1/2 sum [A_rs a_r^+ a_s + conj(A_rs) a_r a_s^+]
/// + 1/2 sum [B_rs a_r^+ a_s^+ + conj(B_rs) a_r a_s] + sum [h_r a_r^+ + conj(h_r) a_r].
/// With `normal_ordered` the a_r a_s^+ term is written a_s^+ a_r, dropping
/// the constant Tr(A)/2.
inline CMatrix build_hamiltonian_operator(const HamiltonianRep& ham, const FockSpace& space,
                                          bool normal_ordered = false) {
  if (ham.n() != space.n()) fail(ErrorKind::DimensionMismatch, "Hamiltonian and Fock space mode counts differ");
  if (space.d() < 4) fail(ErrorKind::DimensionMismatch, "the Hamiltonian operator needs d >= 4 levels");
  const Index n = ham.n();
  CMatrix op = CMatrix::Zero(space.dim(), space.dim());
  for (Index r = 0; r < n; ++r) {
    const CMatrix& ar = space.a(r);
    const CMatrix ard = ar.adjoint();
    for (Index s = 0; s < n; ++s) {
      const CMatrix& as = space.a(s);
      const CMatrix asd = as.adjoint();
      const Complex a_rs = ham.A()(r, s);
      const Complex b_rs = ham.B()(r, s);
      if (a_rs != 0.0) {
        op += 0.5 * a_rs * (ard * as);
        op += 0.5 * std::conj(a_rs) * (normal_ordered ? CMatrix(asd * ar) : CMatrix(ar * asd));
      }
      if (b_rs != 0.0) {
        op += 0.5 * b_rs * (ard * asd);
        op += 0.5 * std::conj(b_rs) * (ar * as);
      }
    }
    op += ham.h()(r) * ard + std::conj(ham.h()(r)) * ar;
  }
  const double dev = hermitian_deviation(op);
  if (dev > tol::kNumeric * std::max(max_abs(op), 1.0)) {
    std::ostringstream os;
    os << "Hamiltonian operator deviates from Hermitian by " << dev;
    fail(ErrorKind::StructureViolation, os.str());
  }
  return (op + op.adjoint()) / 2.0;
}

/// e^{-i Hop} for a Hermitian operator matrix.
inline CMatrix evolution_unitary(const CMatrix& hop) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hop);
  if (es.info() != Eigen::Success) fail(ErrorKind::NoConvergence, "Hermitian eigensolver failed");
  CVector ph(hop.rows());
  for (Index i = 0; i < hop.rows(); ++i) ph(i) = std::exp(-kI * es.eigenvalues()(i));
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

/// max over modes k and basis states i, j with excitation below `level` of
/// |(U^+ a_k U - E a - F a^+ - s)_{ij}|.
inline double heisenberg_residual(const CMatrix& u, const SymplecticPair& pair, const FockSpace& space,
                                  Index level) {
  if (pair.n() != space.n()) fail(ErrorKind::DimensionMismatch, "pair and Fock space mode counts differ");
  const std::vector<Index> idx = space.subspace(level);
  const Index n = pair.n();
  const CMatrix id = CMatrix::Identity(space.dim(), space.dim());
  double worst = 0.0;
  for (Index k = 0; k < n; ++k) {
    CMatrix expected = pair.s()(k) * id;
    for (Index j = 0; j < n; ++j)
      expected += pair.E()(k, j) * space.a(j) + pair.F()(k, j) * space.a(j).adjoint();
    const CMatrix evolved = u.adjoint() * space.a(k) * u;
    worst = std::max(worst, FockSpace::restricted_max(evolved - expected, idx));
  }
  return worst;
}

/// <0| U^+ a_k U |0> for every mode: the displacement seen from the vacuum,
/// the best-resolved entry of the truncated evolution.
inline CVector vacuum_shift(const CMatrix& u, const FockSpace& space) {
  CVector s(space.n());
  const CVector psi0 = u.col(0);
  for (Index k = 0; k < space.n(); ++k) s(k) = psi0.dot(space.a(k) * psi0);
  return s;
}

enum class HeisenbergVerdict { Pass, TruncationDominates, Mismatch };

constexpr std::string_view to_string(HeisenbergVerdict v) {
  switch (v) {
    case HeisenbergVerdict::Pass: return "pass";
    case HeisenbergVerdict::TruncationDominates: return "truncation-dominates";
    case HeisenbergVerdict::Mismatch: return "mismatch";
  }
  return "unknown";
}

struct HeisenbergOptions {
  double tolerance = 1e-6;
  /// Compare on states with total excitation < level; 0 means d/2.
  Index level = 0;
  /// Extra levels for the truncation diagnosis when the check fails.
  Index extra_levels = 10;
  bool normal_ordered = false;
  Index max_dim = kDefaultMaxFockDim;
};

struct HeisenbergReport {
  Index d = 0;
  Index level = 0;
  double residual = 0.0;
  /// Residual on the same subspace at d + extra_levels (only on failure).
  double residual_larger_d = -1.0;
  double tolerance = 0.0;
  HeisenbergVerdict verdict = HeisenbergVerdict::Pass;

  bool pass() const { return verdict == HeisenbergVerdict::Pass; }
};

/// Evolves the mode operators with the Hamiltonian operator of `ham` on a
/// d-level truncation and compares with (E, F, s). A failing residual that
/// at least halves when d grows is reported as TruncationDominates rather
/// than a logic mismatch.
inline HeisenbergReport heisenberg_check(const HamiltonianRep& ham, const SymplecticPair& pair, Index d,
                                         const HeisenbergOptions& opt = {}) {
  HeisenbergReport rep;
  rep.d = d;
  rep.level = opt.level > 0 ? opt.level : d / 2;
  rep.tolerance = opt.tolerance;
  auto residual_at = [&](Index dd) {
    const FockSpace space(ham.n(), dd, opt.max_dim);
    const CMatrix u = evolution_unitary(build_hamiltonian_operator(ham, space, opt.normal_ordered));
    return heisenberg_residual(u, pair, space, rep.level);
  };
  rep.residual = residual_at(d);
  if (rep.residual <= opt.tolerance) return rep;
  rep.residual_larger_d = residual_at(d + opt.extra_levels);
  rep.verdict = rep.residual_larger_d < 0.5 * rep.residual ? HeisenbergVerdict::TruncationDominates
                                                     : HeisenbergVerdict::Mismatch;
  return rep;
}

/// Default truncation per mode count: 40 levels for one mode, 14 for two.
inline Index default_fock_levels(Index n) { return n == 1 ? 40 : (n == 2 ? 14 : 6); }

}  // namespace sympleq
