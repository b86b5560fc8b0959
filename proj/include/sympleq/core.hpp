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

// Structured matrix and vector types shared by every representation of a
// Gaussian unitary. All of them carry the conjugate block pattern
//
//     M = [[X, Y], [conj(Y), conj(X)]],   v = [x; conj(x)]
//
// and only the upper blocks are stored, so the pattern cannot be broken.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "sympleq/error.hpp"

namespace sympleq {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

namespace tol {
/// Structural checks (Hermitian, symmetric, conjugate blocks), relative to
/// the largest entry.
inline constexpr double kStructure = 1e-10;
/// ||S Omega S^H - Omega||_max.
inline constexpr double kSymplectic = 1e-9;
/// Reassembly of polar factors.
inline constexpr double kReconstruction = 1e-9;
/// Generic numerical agreement between two routes to the same quantity.
inline constexpr double kNumeric = 1e-9;
/// Eigenvalue coincidence / branch-cut proximity, relative to max |lambda|.
inline constexpr double kEigen = 1e-8;
/// Largest acceptable condition number of a change of basis.
inline constexpr double kConditionMax = 1e10;
/// Singular values below kRank * sigma_max count as zero.
inline constexpr double kRank = 1e-10;
/// Guard on vanishing denominators of the single-mode closed forms.
inline constexpr double kDenominator = 1e-8;
}  // namespace tol

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) {
      const auto v = m(i, j);
      if (!std::isfinite(std::real(v)) || !std::isfinite(std::imag(v))) return false;
    }
  return true;
}

/// Complex symplectic form diag(I_n, -I_n).
inline CMatrix omega(Index n) {
  CMatrix w = CMatrix::Zero(2 * n, 2 * n);
  w.topLeftCorner(n, n).setIdentity();
  w.bottomRightCorner(n, n) = -CMatrix::Identity(n, n);
  return w;
}

/// Real symplectic form [[0, I_n], [-I_n, 0]] for quadrature ordering [q; p].
inline RMatrix omega0(Index n) {
  RMatrix w = RMatrix::Zero(2 * n, 2 * n);
  w.topRightCorner(n, n).setIdentity();
  w.bottomLeftCorner(n, n) = -RMatrix::Identity(n, n);
  return w;
}

inline CMatrix assemble_blocks(const CMatrix& upper_left, const CMatrix& upper_right) {
  const Index n = upper_left.rows();
  CMatrix m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = upper_left;
  m.topRightCorner(n, n) = upper_right;
  m.bottomLeftCorner(n, n) = upper_right.conjugate();
  m.bottomRightCorner(n, n) = upper_left.conjugate();
  return m;
}

inline CVector assemble_vector(const CVector& upper) {
  const Index n = upper.size();
  CVector v(2 * n);
  v.head(n) = upper;
  v.tail(n) = upper.conjugate();
  return v;
}

/// Largest deviation of `m` from the conjugate block pattern.
inline double block_structure_deviation(const CMatrix& m) {
  const Index n = m.rows() / 2;
  const double a = max_abs(CMatrix(m.bottomLeftCorner(n, n) - m.topRightCorner(n, n).conjugate()));
  const double b = max_abs(CMatrix(m.bottomRightCorner(n, n) - m.topLeftCorner(n, n).conjugate()));
  return std::max(a, b);
}

inline double vector_structure_deviation(const CVector& v) {
  const Index n = v.size() / 2;
  return max_abs(CVector(v.tail(n) - v.head(n).conjugate()));
}

struct BlockForm {
  CMatrix upper_left;
  CMatrix upper_right;
  CVector upper;
};

/// Inverse of assemble_blocks/assemble_vector. The tolerance is relative to
/// the largest entry of `m` (resp. `v`).
inline BlockForm split_blocks(const CMatrix& m, const CVector& v,
                              double tolerance = tol::kStructure) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || v.size() != m.rows()) {
    std::ostringstream os;
    os << "expected a 2n x 2n matrix and a 2n vector, got " << m.rows() << "x" << m.cols()
       << " and " << v.size();
    fail(ErrorKind::DimensionMismatch, os.str());
  }
  const double dm = block_structure_deviation(m);
  if (dm > tolerance * max_abs(m)) {
    std::ostringstream os;
    os << "lower blocks deviate from conjugates of the upper blocks by " << dm;
    fail(ErrorKind::StructureViolation, os.str());
  }
  const double dv = vector_structure_deviation(v);
  if (dv > tolerance * max_abs(v)) {
    std::ostringstream os;
    os << "lower half of the vector deviates from the conjugate of the upper half by " << dv;
    fail(ErrorKind::StructureViolation, os.str());
  }
  const Index n = m.rows() / 2;
  return {m.topLeftCorner(n, n), m.topRightCorner(n, n), v.head(n)};
}

namespace detail {

inline void require_square(const CMatrix& m, Index n, const char* name) {
  if (m.rows() != n || m.cols() != n) {
    std::ostringstream os;
    os << name << " must be " << n << "x" << n << ", got " << m.rows() << "x" << m.cols();
    fail(ErrorKind::DimensionMismatch, os.str());
  }
}

inline void require_size(const CVector& v, Index n, const char* name) {
  if (v.size() != n) {
    std::ostringstream os;
    os << name << " must have length " << n << ", got " << v.size();
    fail(ErrorKind::DimensionMismatch, os.str());
  }
}

inline void require_finite(const CMatrix& m, const char* name) {
  if (!all_finite(m)) fail(ErrorKind::NonFinite, std::string(name) + " has non-finite entries");
}

}  // namespace detail

inline double hermitian_deviation(const CMatrix& m) {
  return max_abs(CMatrix(m - m.adjoint()));
}

inline double symmetric_deviation(const CMatrix& m) {
  return max_abs(CMatrix(m - m.transpose()));
}

/// Quadratic Hamiltonian (H, h): H = [[A, B], [conj B, conj A]] with A
/// Hermitian and B symmetric, h = [h; conj h].
class HamiltonianRep {
 public:
  HamiltonianRep(CMatrix a, CMatrix b, CVector h) {
    const Index n = a.rows();
    if (n < 1) fail(ErrorKind::DimensionMismatch, "mode count must be positive");
    detail::require_square(a, n, "A");
    detail::require_square(b, n, "B");
    detail::require_size(h, n, "h");
    detail::require_finite(a, "A");
    detail::require_finite(b, "B");
    detail::require_finite(h, "h");
    const double scale = std::max(max_abs(a), max_abs(b));
    if (hermitian_deviation(a) > tol::kStructure * scale)
      fail(ErrorKind::StructureViolation, "A must be Hermitian");
    if (symmetric_deviation(b) > tol::kStructure * scale)
      fail(ErrorKind::StructureViolation, "B must be symmetric");
    // Project onto the exact pattern; the correction is below tolerance.
    a_ = (a + a.adjoint()) / 2.0;
    b_ = (b + b.transpose()) / 2.0;
    h_ = std::move(h);
  }

  static HamiltonianRep quadratic(CMatrix a, CMatrix b) {
    const Index n = a.rows();
    return HamiltonianRep(std::move(a), std::move(b), CVector::Zero(n));
  }

  static HamiltonianRep from_full(const CMatrix& m, const CVector& v) {
    BlockForm f = split_blocks(m, v);
    return HamiltonianRep(std::move(f.upper_left), std::move(f.upper_right), std::move(f.upper));
  }

  Index n() const { return a_.rows(); }
  const CMatrix& A() const { return a_; }
  const CMatrix& B() const { return b_; }
  const CVector& h() const { return h_; }

  CMatrix matrix() const { return assemble_blocks(a_, b_); }
  CVector vector() const { return assemble_vector(h_); }

  HamiltonianRep with_linear(CVector h) const { return HamiltonianRep(a_, b_, std::move(h)); }

 private:
  CMatrix a_;
  CMatrix b_;
  CVector h_;
};

/// Max-norm residual of S Omega S^H - Omega.
inline double symplectic_residual(const CMatrix& s) {
  const CMatrix w = omega(s.rows() / 2);
  return max_abs(CMatrix(s * w * s.adjoint() - w));
}

/// Complex symplectic pair (S, s) of the affine map xi -> S xi + s with
/// S = [[E, F], [conj F, conj E]].
class SymplecticPair {
 public:
  SymplecticPair(CMatrix e, CMatrix f, CVector s) : SymplecticPair(std::move(e), std::move(f), std::move(s), true) {}

  /// Skips the symplectic check (shape and finiteness are still enforced).
  /// Used to load data that is about to be verified.
  static SymplecticPair unchecked(CMatrix e, CMatrix f, CVector s) {
    return SymplecticPair(std::move(e), std::move(f), std::move(s), false);
  }

  static SymplecticPair from_full(const CMatrix& m, const CVector& v) {
    BlockForm b = split_blocks(m, v);
    return SymplecticPair(std::move(b.upper_left), std::move(b.upper_right), std::move(b.upper));
  }

  static SymplecticPair identity(Index n) {
    return SymplecticPair(CMatrix::Identity(n, n), CMatrix::Zero(n, n), CVector::Zero(n));
  }

  Index n() const { return e_.rows(); }
  const CMatrix& E() const { return e_; }
  const CMatrix& F() const { return f_; }
  const CVector& s() const { return s_; }

  CMatrix matrix() const { return assemble_blocks(e_, f_); }
  CVector vector() const { return assemble_vector(s_); }

  double residual() const { return symplectic_residual(matrix()); }

  SymplecticPair with_shift(CVector s) const { return SymplecticPair(e_, f_, std::move(s), false); }

 private:
  SymplecticPair(CMatrix e, CMatrix f, CVector s, bool check) : e_(std::move(e)), f_(std::move(f)), s_(std::move(s)) {
    const Index n = e_.rows();
    if (n < 1) fail(ErrorKind::DimensionMismatch, "mode count must be positive");
    detail::require_square(e_, n, "E");
    detail::require_square(f_, n, "F");
    detail::require_size(s_, n, "s");
    detail::require_finite(e_, "E");
    detail::require_finite(f_, "F");
    detail::require_finite(s_, "s");
    if (check) {
      const double r = residual();
      if (r > tol::kSymplectic) {
        std::ostringstream os;
        os << "S Omega S^H differs from Omega by " << r;
        fail(ErrorKind::StructureViolation, os.str());
      }
    }
  }

  CMatrix e_;
  CMatrix f_;
  CVector s_;
};

/// Psi = [[P, Q], [conj Q, conj P]], the map from the Hamiltonian's linear
/// term to the displacement: s = P h + Q conj(h).
class PsiMatrix {
 public:
  PsiMatrix(CMatrix p, CMatrix q) : p_(std::move(p)), q_(std::move(q)) {
    detail::require_square(p_, p_.rows(), "P");
    detail::require_square(q_, p_.rows(), "Q");
  }

  static PsiMatrix from_full(const CMatrix& m, double tolerance = tol::kStructure) {
    BlockForm b = split_blocks(m, CVector::Zero(m.rows()), tolerance);
    return PsiMatrix(std::move(b.upper_left), std::move(b.upper_right));
  }

  Index n() const { return p_.rows(); }
  const CMatrix& P() const { return p_; }
  const CMatrix& Q() const { return q_; }
  CMatrix matrix() const { return assemble_blocks(p_, q_); }

  /// Upper half of Psi [h; conj h], evaluated blockwise so the result keeps
  /// the conjugate pattern exactly.
  CVector apply(const CVector& h) const { return p_ * h + q_ * h.conjugate(); }

 private:
  CMatrix p_;
  CMatrix q_;
};

/// Real symplectic pair (S0, s0) acting on quadratures ordered [q_1..q_n, p_1..p_n].
class RealSymplecticPair {
 public:
  RealSymplecticPair(RMatrix s0, RVector v0) : RealSymplecticPair(std::move(s0), std::move(v0), true) {}

  static RealSymplecticPair unchecked(RMatrix s0, RVector v0) {
    return RealSymplecticPair(std::move(s0), std::move(v0), false);
  }

  Index n() const { return s0_.rows() / 2; }
  const RMatrix& S0() const { return s0_; }
  const RVector& s0() const { return v0_; }

  double residual() const {
    const RMatrix w = omega0(n());
    return max_abs(RMatrix(s0_ * w * s0_.transpose() - w));
  }

 private:
  RealSymplecticPair(RMatrix s0, RVector v0, bool check) : s0_(std::move(s0)), v0_(std::move(v0)) {
    if (s0_.rows() != s0_.cols() || s0_.rows() % 2 != 0 || s0_.rows() == 0 || v0_.size() != s0_.rows())
      fail(ErrorKind::DimensionMismatch, "expected a 2n x 2n real matrix and a 2n real vector");
    if (!s0_.allFinite() || !v0_.allFinite()) fail(ErrorKind::NonFinite, "real pair has non-finite entries");
    if (check) {
      const double r = residual();
      if (r > tol::kSymplectic) {
        std::ostringstream os;
        os << "S0 Omega0 S0^T differs from Omega0 by " << r;
        fail(ErrorKind::StructureViolation, os.str());
      }
    }
  }

  RMatrix s0_;
  RVector v0_;
};

inline std::pair<CMatrix, CVector> assemble_full(const HamiltonianRep& h) { return {h.matrix(), h.vector()}; }
inline std::pair<CMatrix, CVector> assemble_full(const SymplecticPair& p) { return {p.matrix(), p.vector()}; }
inline CMatrix assemble_full(const PsiMatrix& p) { return p.matrix(); }

}  // namespace sympleq
