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

// Dense complex matrix kernels: exponential, principal logarithm, splitting
// of the zero eigenvalue block, squeeze polar form and the 2x2 Sylvester
// logarithm. Sizes here are tiny (2n <= 16), so everything favours
// robustness over speed.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "sympleq/core.hpp"

namespace sympleq {

namespace detail {

inline double norm1(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().colwise().sum().maxCoeff();
}

inline void require_square_finite(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) fail(ErrorKind::DimensionMismatch, std::string(what) + " needs a square matrix");
  if (!all_finite(m)) fail(ErrorKind::NonFinite, std::string(what) + " input has non-finite entries");
}

// Principal square root of an upper triangular matrix (Bjorck-Hammarling).
inline CMatrix sqrt_upper_triangular(const CMatrix& t) {
  const Index p = t.rows();
  CMatrix r = CMatrix::Zero(p, p);
  for (Index j = 0; j < p; ++j) {
    r(j, j) = std::sqrt(t(j, j));
    for (Index i = j - 1; i >= 0; --i) {
      Complex acc = 0.0;
      for (Index k = i + 1; k < j; ++k) acc += r(i, k) * r(k, j);
      r(i, j) = (t(i, j) - acc) / (r(i, i) + r(j, j));
    }
  }
  return r;
}

// log(T) for upper triangular T with no eigenvalue on the closed negative
// real axis: square roots until T is close to I, then the log(I + X) series.
inline CMatrix log_upper_triangular(CMatrix t) {
  const Index p = t.rows();
  const CMatrix id = CMatrix::Identity(p, p);
  int halvings = 0;
  while (norm1(t - id) > 0.1) {
    if (halvings == 60) fail(ErrorKind::NoConvergence, "matrix log: square roots did not approach I");
    t = sqrt_upper_triangular(t);
    ++halvings;
  }
  const CMatrix x = t - id;
  CMatrix term = x;
  CMatrix sum = x;
  for (int m = 2; m < 200; ++m) {
    term = term * x;
    const double sign = (m % 2 == 0) ? -1.0 : 1.0;
    const CMatrix add = term * (sign / m);
    sum += add;
    if (norm1(add) <= 1e-18 * std::max(norm1(sum), 1e-300)) break;
  }
  return sum * std::ldexp(1.0, halvings);
}

// Swap the adjacent diagonal entries k, k+1 of the upper triangular `t`,
// updating the unitary `q` so that q t q^H is unchanged.
inline void swap_schur_pair(CMatrix& t, CMatrix& q, Index k) {
  const Complex t11 = t(k, k);
  const Complex t22 = t(k + 1, k + 1);
  Eigen::Vector2cd v(t(k, k + 1), t22 - t11);
  const double nv = v.norm();
  if (nv == 0.0) return;
  v /= nv;
  Eigen::Matrix2cd g;
  g << v(0), -std::conj(v(1)), v(1), std::conj(v(0));
  t.middleRows(k, 2) = (g.adjoint() * t.middleRows(k, 2)).eval();
  t.middleCols(k, 2) = (t.middleCols(k, 2) * g).eval();
  q.middleCols(k, 2) = (q.middleCols(k, 2) * g).eval();
  t(k + 1, k) = 0.0;
  t(k, k) = t22;
  t(k + 1, k + 1) = t11;
}

// Solves t11 x - x t22 = rhs for upper triangular t11, t22 with disjoint
// spectra.
inline CMatrix solve_triangular_sylvester(const CMatrix& t11, const CMatrix& t22, const CMatrix& rhs) {
  const Index r = t11.rows();
  const Index m = t22.rows();
  CMatrix x = CMatrix::Zero(r, m);
  for (Index j = 0; j < m; ++j) {
    CVector b = rhs.col(j);
    for (Index l = 0; l < j; ++l) b += x.col(l) * t22(l, j);
    const CMatrix shifted = t11 - t22(j, j) * CMatrix::Identity(r, r);
    x.col(j) = shifted.triangularView<Eigen::Upper>().solve(b);
  }
  return x;
}

}  // namespace detail

/// e^C by scaling and squaring with a degree-13 Pade approximant.
inline CMatrix mat_exp(const CMatrix& c) {
  detail::require_square_finite(c, "mat_exp");
  const Index p = c.rows();
  if (p == 0) return c;
  static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;
  const double n1 = detail::norm1(c);
  if (n1 == 0.0) return CMatrix::Identity(p, p);
  int squarings = 0;
  if (n1 > theta13) squarings = static_cast<int>(std::ceil(std::log2(n1 / theta13)));
  const CMatrix a = c / std::ldexp(1.0, squarings);
  const CMatrix id = CMatrix::Identity(p, p);
  const CMatrix a2 = a * a;
  const CMatrix a4 = a2 * a2;
  const CMatrix a6 = a4 * a2;
  const CMatrix u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  const CMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  CMatrix r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

/// Principal logarithm: the unique log whose eigenvalues have imaginary part
/// in (-pi, pi). Throws BranchCut when an eigenvalue sits on (or within
/// tol::kEigen of) the closed negative real axis and Singular when M is.
inline CMatrix mat_log_principal(const CMatrix& m) {
  detail::require_square_finite(m, "mat_log_principal");
  const Index p = m.rows();
  if (p == 0) return m;
  Eigen::ComplexSchur<CMatrix> schur(m);
  if (schur.info() != Eigen::Success) fail(ErrorKind::NoConvergence, "Schur decomposition failed");
  const CMatrix& t = schur.matrixT();
  const CVector lambda = t.diagonal();
  const double scale = std::max(max_abs(lambda), max_abs(m));
  for (Index i = 0; i < p; ++i) {
    const Complex l = lambda(i);
    if (std::abs(l) <= tol::kRank * scale) fail(ErrorKind::Singular, "matrix log of a singular matrix");
    if (l.real() < 0.0 && std::abs(l.imag()) <= tol::kEigen * scale) {
      std::ostringstream os;
      os << "eigenvalue " << l.real() << (l.imag() < 0 ? "-" : "+") << std::abs(l.imag())
         << "i lies on the negative real axis";
      fail(ErrorKind::BranchCut, os.str());
    }
  }
  const CMatrix& u = schur.matrixU();
  return u * detail::log_upper_triangular(t) * u.adjoint();
}

/// C = V (lambda_r (+) lambda_0) V^-1 where lambda_r collects the eigenvalues
/// above the zero threshold and lambda_0 is (numerically) nilpotent.
struct JordanSplit {
  CMatrix V;
  CMatrix V_inv;
  CMatrix lambda_r;
  CMatrix lambda_0;
  Index rank = 0;
  double condition = 1.0;
  bool ill_conditioned = false;

  CMatrix block_diagonal() const {
    const Index r = lambda_r.rows();
    const Index z = lambda_0.rows();
    CMatrix d = CMatrix::Zero(r + z, r + z);
    d.topLeftCorner(r, r) = lambda_r;
    d.bottomRightCorner(z, z) = lambda_0;
    return d;
  }

  CMatrix reconstruct() const { return V * block_diagonal() * V_inv; }

  /// ||lambda_0^k||_max for k = size of lambda_0 (0 for an exact nilpotent).
  double nilpotency_residual() const {
    const Index z = lambda_0.rows();
    if (z == 0) return 0.0;
    CMatrix pw = lambda_0;
    for (Index k = 1; k < z; ++k) pw = pw * lambda_0;
    return max_abs(pw);
  }
};

/// Separates the zero-eigenvalue block of C from the rest. Built on an
/// ordered complex Schur form decoupled by a triangular Sylvester solve, so
/// defective (Jordan) structure is never diagonalised explicitly. The
/// condition number of V is reported; exceeding tol::kConditionMax sets
/// `ill_conditioned` instead of throwing.
inline JordanSplit jordan_split(const CMatrix& c, double zero_threshold) {
  detail::require_square_finite(c, "jordan_split");
  const Index p = c.rows();
  Eigen::ComplexSchur<CMatrix> schur(c);
  if (schur.info() != Eigen::Success) fail(ErrorKind::NoConvergence, "Schur decomposition failed");
  CMatrix t = schur.matrixT();
  CMatrix q = schur.matrixU();

  auto is_zero = [&](Index i) { return std::abs(t(i, i)) <= zero_threshold; };
  // Bubble the nonzero eigenvalues to the front.
  for (Index pass = 0; pass < p; ++pass) {
    bool swapped = false;
    for (Index k = 0; k + 1 < p; ++k) {
      if (is_zero(k) && !is_zero(k + 1)) {
        detail::swap_schur_pair(t, q, k);
        swapped = true;
      }
    }
    if (!swapped) break;
  }
  Index r = 0;
  while (r < p && !is_zero(r)) ++r;

  const Index z = p - r;
  const CMatrix t11 = t.topLeftCorner(r, r);
  const CMatrix t22 = t.bottomRightCorner(z, z);
  CMatrix x = CMatrix::Zero(r, z);
  if (r > 0 && z > 0) x = detail::solve_triangular_sylvester(t11, t22, -t.topRightCorner(r, z));

  CMatrix y = CMatrix::Identity(p, p);
  y.topRightCorner(r, z) = x;
  CMatrix y_inv = CMatrix::Identity(p, p);
  y_inv.topRightCorner(r, z) = -x;

  JordanSplit out;
  out.V = q * y;
  out.V_inv = y_inv * q.adjoint();
  out.lambda_r = t11.triangularView<Eigen::Upper>();
  out.lambda_0 = t22.triangularView<Eigen::Upper>();
  out.rank = r;
  if (p > 0) {
    Eigen::JacobiSVD<CMatrix> svd(y);
    const auto& sv = svd.singularValues();
    out.condition = sv(0) / sv(sv.size() - 1);
  }
  out.ill_conditioned = !(out.condition <= tol::kConditionMax);
  return out;
}

/// (e^L - I) L^-1, read off as the upper right block of
/// exp([[L, I], [0, 0]]). No inverse is formed, so small eigenvalues of L
/// cause no cancellation.
inline CMatrix exp_minus_identity_over(const CMatrix& l) {
  const Index p = l.rows();
  if (p == 0) return l;
  CMatrix aug = CMatrix::Zero(2 * p, 2 * p);
  aug.topLeftCorner(p, p) = l;
  aug.topRightCorner(p, p).setIdentity();
  return mat_exp(aug).topRightCorner(p, p);
}

/// sum_{m>=1} L^(m-1)/m! for (quasi-)nilpotent L; terminates once the terms
/// vanish, which for an exact nilpotent is after size(L) terms.
inline CMatrix nilpotent_series(const CMatrix& l) {
  const Index p = l.rows();
  CMatrix sum = CMatrix::Identity(p, p);
  if (p == 0) return sum;
  CMatrix term = CMatrix::Identity(p, p);
  for (int m = 2; m < 60; ++m) {
    term = term * l / static_cast<double>(m);
    sum += term;
    if (max_abs(term) <= 1e-18) break;
  }
  return sum;
}

/// f(M) for Hermitian M through its eigendecomposition.
template <typename Fn>
CMatrix hermitian_function(const CMatrix& m, Fn&& f) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  if (es.info() != Eigen::Success) fail(ErrorKind::NoConvergence, "Hermitian eigensolver failed");
  const auto& w = es.eigenvalues();
  CVector fw(w.size());
  for (Index i = 0; i < w.size(); ++i) fw(i) = Complex(f(w(i)));
  return es.eigenvectors() * fw.asDiagonal() * es.eigenvectors().adjoint();
}

/// e^{i M} for Hermitian M.
inline CMatrix unitary_exp(const CMatrix& m) {
  return hermitian_function(m, [](double x) { return std::exp(kI * x); });
}

/// z = r e^{i theta}: r = (z z^H)^{1/2} positive semidefinite, theta Hermitian
/// with spectrum in (-pi, pi], `phase` = e^{i theta}.
struct SqueezePolar {
  CMatrix r;
  CMatrix theta;
  CMatrix phase;
  bool degenerate = false;
};

inline SqueezePolar polar_decompose_squeeze(const CMatrix& z) {
  detail::require_square_finite(z, "polar_decompose_squeeze");
  const Index n = z.rows();
  if (symmetric_deviation(z) > tol::kStructure * max_abs(z))
    fail(ErrorKind::StructureViolation, "squeeze matrix must be symmetric");

  Eigen::JacobiSVD<CMatrix> svd(z, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector sigma = svd.singularValues();
  const CMatrix& w = svd.matrixU();
  const CMatrix& x = svd.matrixV();
  const double smax = n > 0 ? sigma(0) : 0.0;
  Index k = 0;
  while (k < n && sigma(k) > tol::kRank * smax && sigma(k) > 0.0) ++k;

  SqueezePolar out;
  out.degenerate = k < n;
  CVector sig_c = sigma.head(k).cast<Complex>();
  out.r = w.leftCols(k) * sig_c.asDiagonal() * w.leftCols(k).adjoint();
  out.r = (out.r + out.r.adjoint()).eval() / 2.0;

  CMatrix u = w.leftCols(k) * x.leftCols(k).adjoint();
  if (k < n) {
    // Unitary completion from null(z) onto null(z^H): the polar factor of
    // W0^H X0, which is the projector onto the null space whenever
    // null(z) = null(z^H), i.e. theta vanishes there.
    const CMatrix w0 = w.rightCols(n - k);
    const CMatrix x0 = x.rightCols(n - k);
    Eigen::JacobiSVD<CMatrix> inner(CMatrix(w0.adjoint() * x0), Eigen::ComputeFullU | Eigen::ComputeFullV);
    const CMatrix g = inner.matrixU() * inner.matrixV().adjoint();
    u += w0 * g * x0.adjoint();
  }

  // u is normal, so its Schur form is diagonal up to round-off.
  Eigen::ComplexSchur<CMatrix> schur(u);
  const CMatrix& q = schur.matrixU();
  CVector angles(n);
  for (Index i = 0; i < n; ++i) {
    double a = std::arg(schur.matrixT()(i, i));
    if (a <= -std::numbers::pi) a = std::numbers::pi;
    angles(i) = a;
  }
  out.theta = q * angles.asDiagonal() * q.adjoint();
  out.theta = (out.theta + out.theta.adjoint()).eval() / 2.0;
  out.phase = unitary_exp(out.theta);
  return out;
}

/// log S for a 2x2 matrix with distinct eigenvalues by Sylvester
/// interpolation: log S = [log l+ (S - l- I) - log l- (S - l+ I)] / (l+ - l-).
inline CMatrix sylvester_log_2x2(const CMatrix& s) {
  if (s.rows() != 2 || s.cols() != 2) fail(ErrorKind::DimensionMismatch, "sylvester_log_2x2 needs a 2x2 matrix");
  detail::require_square_finite(s, "sylvester_log_2x2");
  const Complex half_trace = (s(0, 0) + s(1, 1)) / 2.0;
  const Complex det = s(0, 0) * s(1, 1) - s(0, 1) * s(1, 0);
  const Complex root = std::sqrt(half_trace * half_trace - det);
  const Complex lp = half_trace + root;
  const Complex lm = half_trace - root;
  const double scale = std::max(std::abs(lp), std::abs(lm));
  if (std::abs(lp - lm) <= tol::kEigen * scale)
    fail(ErrorKind::DegenerateEigenvalues, "2x2 Sylvester logarithm needs distinct eigenvalues");
  for (Complex l : {lp, lm}) {
    if (std::abs(l) <= tol::kRank * scale) fail(ErrorKind::Singular, "matrix log of a singular matrix");
    if (l.real() < 0.0 && std::abs(l.imag()) <= tol::kEigen * scale)
      fail(ErrorKind::BranchCut, "eigenvalue on the negative real axis");
  }
  const CMatrix id = CMatrix::Identity(2, 2);
  return (std::log(lp) * (s - lm * id) - std::log(lm) * (s - lp * id)) / (lp - lm);
}

}  // namespace sympleq
