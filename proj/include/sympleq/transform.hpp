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

// (H, h) <-> (S, s). The forward map is S = exp(-i Omega H) and
// s = Psi h with Psi = sum_{m>=1} (-i Omega H)^{m-1}/m! (-i Omega).

#pragma once

#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "sympleq/core.hpp"
#include "sympleq/linalg.hpp"

namespace sympleq {

enum class PsiPath {
  ClosedForm,      // Psi = (S - I) H^-1
  JordanSeries,    // singular H: regular block plus finite nilpotent sum
  SeriesFallback,  // Jordan split was ill-conditioned
  Series,          // series requested by the caller
};

constexpr std::string_view to_string(PsiPath p) {
  switch (p) {
    case PsiPath::ClosedForm: return "closed-form";
    case PsiPath::JordanSeries: return "jordan-series";
    case PsiPath::SeriesFallback: return "series-fallback";
    case PsiPath::Series: return "series";
  }
  return "unknown";
}

struct ForwardResult {
  SymplecticPair pair;
  PsiMatrix psi;
  PsiPath path;
  /// Numerical rank of H at the tol::kRank threshold.
  Index rank;
};

/// -i Omega M for a 2n x 2n matrix M.
inline CMatrix times_minus_i_omega_left(const CMatrix& m) {
  const Index n = m.rows() / 2;
  CMatrix c = -kI * m;
  c.bottomRows(n) *= -1.0;
  return c;
}

/// M (-i Omega).
inline CMatrix times_minus_i_omega_right(const CMatrix& m) {
  const Index n = m.cols() / 2;
  CMatrix c = -kI * m;
  c.rightCols(n) *= -1.0;
  return c;
}

/// Partial sums of the defining series of Psi until a term drops below
/// tol times the running sum (twice in a row).
inline PsiMatrix psi_series_oracle(const HamiltonianRep& ham, double tol = 1e-14) {
  const CMatrix c = times_minus_i_omega_left(ham.matrix());
  const Index p = c.rows();
  CMatrix term = CMatrix::Identity(p, p);
  CMatrix sum = term;
  int quiet = 0;
  for (int m = 2; m <= 200; ++m) {
    term = term * c / static_cast<double>(m);
    sum += term;
    if (max_abs(term) <= tol * max_abs(sum)) {
      if (++quiet == 2) return PsiMatrix::from_full(times_minus_i_omega_right(sum), 1e-8);
    } else {
      quiet = 0;
    }
  }
  fail(ErrorKind::NoConvergence, "Psi series did not converge within 200 terms");
}

/// Psi for singular H: V [W_r (+) W_0] V^-1 (-i Omega), with
/// W_r = (e^L_r - I) L_r^-1 and W_0 = sum_{m>=1} L_0^{m-1}/m!.
/// Throws IllConditioned when the splitting basis is unusable.
inline PsiMatrix singular_psi(const HamiltonianRep& ham) {
  const CMatrix c = times_minus_i_omega_left(ham.matrix());
  // Eigenvalues of a k x k Jordan block perturbed by round-off scatter by
  // about eps^(1/k) ||C||, so the zero cluster is identified generously.
  // Routing a small nonzero eigenvalue to Lambda_0 is harmless: the series
  // for W_0 is the same function, summed to convergence.
  const double zero_threshold = 1e-6 * std::max(detail::norm1(c), 1.0);
  const JordanSplit js = jordan_split(c, zero_threshold);
  if (js.ill_conditioned) {
    std::ostringstream os;
    os << "zero-eigenvalue splitting basis has condition number " << js.condition;
    fail(ErrorKind::IllConditioned, os.str());
  }
  const Index r = js.rank;
  const Index z = c.rows() - r;
  CMatrix w = CMatrix::Zero(c.rows(), c.rows());
  if (r > 0) w.topLeftCorner(r, r) = exp_minus_identity_over(js.lambda_r);
  if (z > 0) w.bottomRightCorner(z, z) = nilpotent_series(js.lambda_0);
  const CMatrix psi = times_minus_i_omega_right(CMatrix(js.V * w * js.V_inv));
  return PsiMatrix::from_full(psi, 1e-8);
}

inline Index numerical_rank(const CMatrix& m, double* condition = nullptr) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  const RVector& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol::kRank * smax) ++rank;
  if (condition) *condition = (sv.size() && sv(sv.size() - 1) > 0.0) ? smax / sv(sv.size() - 1) : INFINITY;
  return rank;
}

/// Forward map (H, h) -> (S, s, Psi). `force_series` computes Psi from the defining
/// series instead of the closed form or the Jordan route.
inline ForwardResult forward_transform(const HamiltonianRep& ham, bool force_series = false) {
  const Index n = ham.n();
  const CMatrix hf = ham.matrix();
  const CMatrix s_full = mat_exp(times_minus_i_omega_left(hf));
  const BlockForm sb = split_blocks(s_full, CVector::Zero(2 * n), 1e-8);

  double condition = 0.0;
  const Index rank = numerical_rank(hf, &condition);

  auto psi_and_path = [&]() -> std::pair<PsiMatrix, PsiPath> {
    if (force_series) return {psi_series_oracle(ham, 1e-14), PsiPath::Series};
    // A full-rank but nearly singular H would lose accuracy through the
    // inverse; the Jordan route handles the small eigenvalues instead.
    if (rank == 2 * n && condition <= 1e8) {
      const CMatrix sm = s_full - CMatrix::Identity(2 * n, 2 * n);
      const CMatrix psi = hf.transpose().partialPivLu().solve(sm.transpose()).transpose();
      return {PsiMatrix::from_full(psi, 1e-8), PsiPath::ClosedForm};
    }
    try {
      return {singular_psi(ham), PsiPath::JordanSeries};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::IllConditioned) throw;
      return {psi_series_oracle(ham, 1e-13), PsiPath::SeriesFallback};
    }
  };
  auto [psi, path] = psi_and_path();
  SymplecticPair pair(sb.upper_left, sb.upper_right, psi.apply(ham.h()));
  return {std::move(pair), std::move(psi), path, rank};
}

/// Solves s = P h + Q conj(h) for h.
inline CVector solve_linear_term(const PsiMatrix& psi, const CVector& s) {
  const Index n = psi.n();
  if (max_abs(s) == 0.0) return CVector::Zero(n);
  const CMatrix full = psi.matrix();
  Eigen::FullPivLU<CMatrix> lu(full);
  if (!lu.isInvertible() || std::abs(lu.rcond()) < 1e-14)
    fail(ErrorKind::Singular, "Psi is singular; the linear term cannot be recovered from s");
  const CVector x = lu.solve(assemble_vector(s));
  return x.head(n);
}

/// H = i Omega log S on the principal branch; h recovered from s = Psi h.
inline HamiltonianRep inverse_hamiltonian(const SymplecticPair& pair) {
  const Index n = pair.n();
  const CMatrix log_s = mat_log_principal(pair.matrix());
  CMatrix hf = kI * log_s;
  hf.bottomRows(n) *= -1.0;
  // Both the Hermitian and the conjugate-block patterns are checked against
  // the structure tolerance; a non-structured S shows up here.
  const double scale = std::max(max_abs(hf), 1.0);
  if (hermitian_deviation(hf) > tol::kStructure * scale * 10.0)
    fail(ErrorKind::StructureViolation, "recovered H is not Hermitian; S is not a structured symplectic matrix");
  const BlockForm bf = split_blocks(hf, CVector::Zero(2 * n), tol::kStructure * 10.0);
  HamiltonianRep quad(bf.upper_left, bf.upper_right, CVector::Zero(n));
  if (max_abs(pair.s()) == 0.0) return quad;
  const PsiMatrix psi = forward_transform(quad).psi;
  return quad.with_linear(solve_linear_term(psi, pair.s()));
}

enum class AffineMode { PreDisplacement, PostDisplacement };

/// xi -> S xi + s written as a cascade of a linear map and a displacement.
/// Post: S xi + s. Pre: S (xi + Y) with Y = S^-1 s.
struct AffineDecomposition {
  AffineMode mode;
  SymplecticPair linear;
  CVector shift;
};

/// Upper half of S^-1 [s; conj s] with S^-1 = Omega S^H Omega.
inline CVector symplectic_inverse_apply(const SymplecticPair& pair, const CVector& s) {
  return pair.E().adjoint() * s - pair.F().transpose() * s.conjugate();
}

inline AffineDecomposition decompose_affine(const SymplecticPair& pair, AffineMode mode) {
  SymplecticPair linear = pair.with_shift(CVector::Zero(pair.n()));
  CVector shift = mode == AffineMode::PostDisplacement ? pair.s() : symplectic_inverse_apply(pair, pair.s());
  return {mode, std::move(linear), std::move(shift)};
}

inline SymplecticPair recompose(const AffineDecomposition& d) {
  if (d.mode == AffineMode::PostDisplacement) return d.linear.with_shift(d.shift);
  return d.linear.with_shift(d.linear.E() * d.shift + d.linear.F() * d.shift.conjugate());
}

}  // namespace sympleq
