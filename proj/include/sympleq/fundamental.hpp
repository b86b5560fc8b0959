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

// Displacement D(alpha), rotation R(phi) and squeeze Z(z): their
// Hamiltonians, closed-form (S, s) and Psi, and the single- and two-mode
// inverse formulas.

#pragma once

#include <cmath>
#include <numbers>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "sympleq/core.hpp"
#include "sympleq/linalg.hpp"
#include "sympleq/transform.hpp"

namespace sympleq {

struct Displacement {
  CVector alpha;
};

struct Rotation {
  CMatrix phi;
};

struct Squeeze {
  CMatrix z;
};

using FuParams = std::variant<Displacement, Rotation, Squeeze>;

inline Index mode_count(const FuParams& p) {
  return std::visit(
      [](const auto& v) -> Index {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Displacement>) return v.alpha.size();
        else if constexpr (std::is_same_v<T, Rotation>) return v.phi.rows();
        else return v.z.rows();
      },
      p);
}

namespace detail {

inline void validate_phi(const CMatrix& phi) {
  require_square(phi, phi.rows(), "phi");
  require_finite(phi, "phi");
  if (phi.rows() < 1) fail(ErrorKind::DimensionMismatch, "phi must be non-empty");
  if (hermitian_deviation(phi) > tol::kStructure * std::max(max_abs(phi), 1e-300))
    fail(ErrorKind::StructureViolation, "phi must be Hermitian");
}

inline void validate_z(const CMatrix& z) {
  require_square(z, z.rows(), "z");
  require_finite(z, "z");
  if (z.rows() < 1) fail(ErrorKind::DimensionMismatch, "z must be non-empty");
  if (symmetric_deviation(z) > tol::kStructure * std::max(max_abs(z), 1e-300))
    fail(ErrorKind::StructureViolation, "z must be symmetric");
}

inline CMatrix hermitian_part(const CMatrix& m) { return (m + m.adjoint()) / 2.0; }

}  // namespace detail

/// D: h = i alpha. R: A = -phi. Z: B = i z.
inline HamiltonianRep hamiltonian_of(const FuParams& params) {
  return std::visit(
      [](const auto& v) -> HamiltonianRep {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Displacement>) {
          const Index n = v.alpha.size();
          return HamiltonianRep(CMatrix::Zero(n, n), CMatrix::Zero(n, n), kI * v.alpha);
        } else if constexpr (std::is_same_v<T, Rotation>) {
          detail::validate_phi(v.phi);
          const Index n = v.phi.rows();
          return HamiltonianRep(-v.phi, CMatrix::Zero(n, n), CVector::Zero(n));
        } else {
          detail::validate_z(v.z);
          const Index n = v.z.rows();
          return HamiltonianRep(CMatrix::Zero(n, n), kI * v.z, CVector::Zero(n));
        }
      },
      params);
}

/// S = diag(e^{i phi}, e^{-i phi^T}); periodic in phi, no window check.
inline SymplecticPair rotation_symplectic(const CMatrix& phi) {
  detail::validate_phi(phi);
  const Index n = phi.rows();
  return SymplecticPair(unitary_exp(detail::hermitian_part(phi)), CMatrix::Zero(n, n), CVector::Zero(n));
}

/// S = [[cosh r, sinh r e^{i theta}], [.., ..]] with z = r e^{i theta}.
inline SymplecticPair squeeze_symplectic(const CMatrix& z) {
  detail::validate_z(z);
  const SqueezePolar pol = polar_decompose_squeeze(z);
  const CMatrix ch = hermitian_function(pol.r, [](double x) { return std::cosh(x); });
  const CMatrix sh = hermitian_function(pol.r, [](double x) { return std::sinh(x); });
  const Index n = z.rows();
  return SymplecticPair(ch, sh * pol.phase, CVector::Zero(n));
}

struct ClosedFormResult {
  SymplecticPair pair;
  PsiMatrix psi;
};

/// -i e^{ix/2} sin(x/2)/(x/2), i.e. -(e^{ix} - 1)/x continued to x = 0.
inline Complex rotation_psi_scalar(double x) {
  const double half = x / 2.0;
  const double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0 : std::sin(half) / half;
  return -kI * std::exp(kI * half) * sinc;
}

/// Rotation closed form: P = -(e^{i phi} - I) phi^-1, Q = 0, in the
/// eigenbasis of phi. Singular phi takes the continuous limit P(0) = -i.
/// The closed form is only claimed for spec(phi) inside [-pi, pi).
inline ClosedFormResult rotation_closed_form(const CMatrix& phi, const CVector& h) {
  detail::validate_phi(phi);
  const Index n = phi.rows();
  detail::require_size(h, n, "h");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(detail::hermitian_part(phi));
  const RVector& w = es.eigenvalues();
  for (Index i = 0; i < n; ++i) {
    if (w(i) >= std::numbers::pi || w(i) < -std::numbers::pi - 1e-12) {
      std::ostringstream os;
      os << "rotation eigenvalue " << w(i) << " lies outside [-pi, pi)";
      fail(ErrorKind::OutOfPeriod, os.str());
    }
  }
  CVector e(n), p(n);
  for (Index i = 0; i < n; ++i) {
    e(i) = std::exp(kI * w(i));
    p(i) = rotation_psi_scalar(w(i));
  }
  const CMatrix& v = es.eigenvectors();
  const CMatrix big_e = v * e.asDiagonal() * v.adjoint();
  const CMatrix big_p = v * p.asDiagonal() * v.adjoint();
  PsiMatrix psi(big_p, CMatrix::Zero(n, n));
  SymplecticPair pair(big_e, CMatrix::Zero(n, n), psi.apply(h));
  return {std::move(pair), std::move(psi)};
}

/// Squeeze closed form: P = sinh(r) e^{i theta} (-i z^-1),
/// Q = (cosh r - I) i conj(z)^-1. Requires invertible z.
inline ClosedFormResult squeeze_closed_form(const CMatrix& z, const CVector& h) {
  detail::validate_z(z);
  const Index n = z.rows();
  detail::require_size(h, n, "h");
  const SqueezePolar pol = polar_decompose_squeeze(z);
  if (pol.degenerate) fail(ErrorKind::Singular, "squeeze matrix is singular; use the Jordan route");
  const CMatrix ch = hermitian_function(pol.r, [](double x) { return std::cosh(x); });
  const CMatrix sh = hermitian_function(pol.r, [](double x) { return std::sinh(x); });
  const CMatrix z_inv = z.partialPivLu().inverse();
  const CMatrix p = -kI * sh * pol.phase * z_inv;
  const CMatrix q = kI * (ch - CMatrix::Identity(n, n)) * z_inv.conjugate();
  PsiMatrix psi(p, q);
  SymplecticPair pair(ch, sh * pol.phase, psi.apply(h));
  return {std::move(pair), std::move(psi)};
}

/// S = S_sq S_rot written out: E = cosh(r) e^{i phi},
/// F = sinh(r) e^{i theta} e^{-i phi^T}.
inline SymplecticPair general_symplectic(const CMatrix& z, const CMatrix& phi) {
  detail::validate_z(z);
  detail::validate_phi(phi);
  if (z.rows() != phi.rows()) fail(ErrorKind::DimensionMismatch, "z and phi must have the same size");
  const Index n = z.rows();
  const SqueezePolar pol = polar_decompose_squeeze(z);
  const CMatrix ch = hermitian_function(pol.r, [](double x) { return std::cosh(x); });
  const CMatrix sh = hermitian_function(pol.r, [](double x) { return std::sinh(x); });
  const CMatrix rot = unitary_exp(detail::hermitian_part(phi));
  return SymplecticPair(ch * rot, sh * pol.phase * rot.conjugate(), CVector::Zero(n));
}

/// (S, s) of a single fundamental unitary.
inline SymplecticPair pair_of(const FuParams& params) {
  return std::visit(
      [](const auto& v) -> SymplecticPair {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Displacement>) {
          detail::require_finite(v.alpha, "alpha");
          const Index n = v.alpha.size();
          if (n < 1) fail(ErrorKind::DimensionMismatch, "alpha must be non-empty");
          return SymplecticPair(CMatrix::Identity(n, n), CMatrix::Zero(n, n), v.alpha);
        } else if constexpr (std::is_same_v<T, Rotation>) {
          return rotation_symplectic(v.phi);
        } else {
          return squeeze_symplectic(v.z);
        }
      },
      params);
}

/// b after a: S = S_b S_a, s = S_b s_a + s_b.
inline SymplecticPair compose(const SymplecticPair& a, const SymplecticPair& b) {
  if (a.n() != b.n()) fail(ErrorKind::DimensionMismatch, "cannot compose pairs of different mode counts");
  return SymplecticPair(b.E() * a.E() + b.F() * a.F().conjugate(), b.E() * a.F() + b.F() * a.E().conjugate(),
                        b.E() * a.s() + b.F() * a.s().conjugate() + b.s());
}

/// Applies the cascade in list order: compose([a, b]) = b after a.
inline SymplecticPair compose(const std::vector<FuParams>& cascade) {
  if (cascade.empty()) fail(ErrorKind::DimensionMismatch, "empty cascade");
  SymplecticPair acc = pair_of(cascade.front());
  for (std::size_t i = 1; i < cascade.size(); ++i) acc = compose(acc, pair_of(cascade[i]));
  return acc;
}

struct SingleModeInverse {
  HamiltonianRep ham;
  Complex P;
  Complex Q;
};

/// Single-mode S -> (H, h) by 2x2 Sylvester interpolation:
/// log S = -d0 I + d1 S, H = d1 i Omega S - d0 i Omega, and
///   P =  2i Delta (1 + E) / (A (Re E + 1)),
///   Q = -2i Delta F / (A (Re E + 1)),
/// Delta = sqrt(Re(E)^2 - 1), A = log(Re E - Delta) - log(Re E + Delta).
inline SingleModeInverse single_mode_sylvester(const SymplecticPair& pair) {
  if (pair.n() != 1) fail(ErrorKind::DimensionMismatch, "single_mode_sylvester needs n = 1");
  const Complex e = pair.E()(0, 0);
  const Complex f = pair.F()(0, 0);
  const double re = e.real();
  const Complex delta = std::sqrt(Complex(re * re - 1.0));
  const Complex lp = re + delta;
  const Complex lm = re - delta;
  const double scale = std::max(std::abs(lp), std::abs(lm));
  if (std::abs(lp - lm) <= tol::kEigen * scale) {
    std::ostringstream os;
    os << "|Re E| = " << std::abs(re) << " sits on the degeneracy |Re E| = 1";
    fail(ErrorKind::DegenerateEigenvalues, os.str());
  }
  if (re < -1.0) {
    std::ostringstream os;
    os << "Re E = " << re << " < -1: eigenvalues of S are negative real, no principal logarithm";
    fail(ErrorKind::BranchCut, os.str());
  }
  const Complex log_p = std::log(lp);
  const Complex log_m = std::log(lm);
  const Complex d1 = (log_p - log_m) / (lp - lm);
  const Complex d0 = -(lp * log_m - lm * log_p) / (lp - lm);
  const CMatrix s = pair.matrix();
  const CMatrix w = omega(1);
  const CMatrix hf = d1 * kI * w * s - d0 * kI * w;
  const BlockForm bf = split_blocks(hf, CVector::Zero(2), 1e-8);

  const Complex a = log_m - log_p;
  const Complex denom = a * (re + 1.0);
  if (std::abs(denom) <= tol::kDenominator) fail(ErrorKind::DegenerateEigenvalues, "Sylvester denominator vanishes");
  const Complex p = 2.0 * kI * delta * (1.0 + e) / denom;
  const Complex q = -2.0 * kI * delta * f / denom;

  // s = P h + Q conj(h)  =>  h = (conj(P) s - Q conj(s)) / (|P|^2 - |Q|^2).
  const Complex sv = pair.s()(0);
  CVector h = CVector::Zero(1);
  if (sv != 0.0) {
    const double det = std::norm(p) - std::norm(q);
    if (std::abs(det) <= tol::kDenominator) fail(ErrorKind::Singular, "Psi is singular; h cannot be recovered");
    h(0) = (std::conj(p) * sv - q * std::conj(sv)) / det;
  }
  return {HamiltonianRep(bf.upper_left, bf.upper_right, h), p, q};
}

struct ArccoshResult {
  Complex P;
  Complex Q;
  Complex T;
};

/// Single-mode P, Q for S = [[cosh r e^{i phi}, sinh r e^{i(theta - phi)}], ..]
/// from T = arccosh(cos phi cosh r) (imaginary when cos phi cosh r < 1):
///   P = -i sinh T (-e^{i phi} cosh r (cosh T + 1) + e^{2 i phi} cosh^2 r
///        + sinh^2 r + cosh T) / (T D),
///   Q = i e^{i(theta - phi)} sinh r sinh T (cosh T - 1) / (T D),
///   D = sinh^2 r + (cosh T - e^{i phi} cosh r)^2.
/// D equals sinh^2 T, so near T = 0 the removable singularity is evaluated
/// through tanh(T/2)/T instead.
inline ArccoshResult single_mode_arccosh(double r, double theta, double phi) {
  if (!std::isfinite(r) || !std::isfinite(theta) || !std::isfinite(phi))
    fail(ErrorKind::NonFinite, "non-finite single-mode parameters");
  if (r < 0.0) fail(ErrorKind::StructureViolation, "squeeze magnitude r must be non-negative");
  const double k = std::cos(phi) * std::cosh(r);
  const Complex t = std::acosh(Complex(k));
  const Complex eph = std::exp(kI * phi);
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  const Complex ct = std::cosh(t);

  if (std::abs(t) > 1e-3) {
    const Complex den = sh * sh + (ct - eph * ch) * (ct - eph * ch);
    if (std::abs(den) < tol::kDenominator) {
      std::ostringstream os;
      os << "denominator " << std::abs(den) << " near the divergence cos(phi) cosh(r) = -1 at phi = " << phi
         << ", r = " << r;
      fail(ErrorKind::NearDivergence, os.str());
    }
    const Complex st = std::sinh(t);
    const Complex p =
        -kI * st * (-eph * ch * (ct + 1.0) + eph * eph * ch * ch + sh * sh + ct) / (t * den);
    const Complex q = kI * std::exp(-kI * (phi - theta)) * sh * st * (ct - 1.0) / (t * den);
    return {p, q, t};
  }
  // tanh(T/2)/T = 1/2 - T^2/24 + T^4/240 - ...
  const Complex t2 = t * t;
  const Complex g = 0.5 - t2 / 24.0 + t2 * t2 / 240.0 - 17.0 * t2 * t2 * t2 / 40320.0;
  const Complex p = -kI * g * (1.0 + eph * ch);
  const Complex q = kI * std::exp(kI * (theta - phi)) * sh * g;
  return {p, q, t};
}

struct TwoModeResult {
  SymplecticPair pair;
  HamiltonianRep ham;
  CMatrix P;
  CMatrix Q;
  Complex mu1;
  Complex mu2;
};

/// Beam splitter phi_b = [[0, -i beta], [i beta, 0]] followed by the
/// two-mode squeeze z = [[0, w], [w, 0]], w = r e^{i theta};
/// S = S_c S_b. S has the two double eigenvalues
///   mu_{1,2} = cos(beta) cosh(r) -/+ sqrt(2 cos^2(beta) cosh(2r) + cos(2 beta) - 3)/2,
/// so every function of S is the cubic Hermite interpolant on them. This
/// gives log S = sum_m d_m S^m, and Psi = g(S) (-i Omega) with
/// g(x) = (x - 1)/log x.
inline TwoModeResult two_mode_bs_cs(double beta, double r, double theta) {
  if (!std::isfinite(beta) || !std::isfinite(r) || !std::isfinite(theta))
    fail(ErrorKind::NonFinite, "non-finite two-mode parameters");
  const double cb = std::cos(beta);
  const double ch = std::cosh(r);
  CMatrix phi(2, 2);
  phi << 0.0, -kI * beta, kI * beta, 0.0;
  const Complex w = r * std::exp(kI * theta);
  CMatrix z(2, 2);
  z << 0.0, w, w, 0.0;
  const SymplecticPair sb = rotation_symplectic(phi);
  const SymplecticPair sc = squeeze_symplectic(z);
  const SymplecticPair pair = compose(sb, sc);

  const Complex root = std::sqrt(Complex(2.0 * cb * cb * std::cosh(2.0 * r) + std::cos(2.0 * beta) - 3.0)) / 2.0;
  const Complex mu1 = cb * ch - root;
  const Complex mu2 = cb * ch + root;
  const double scale = std::max(std::abs(mu1), std::abs(mu2));
  if (std::abs(mu1 - mu2) <= tol::kEigen * scale)
    fail(ErrorKind::DegenerateEigenvalues, "the two eigenvalues of S coincide");
  for (Complex m : {mu1, mu2})
    if (m.real() < 0.0 && std::abs(m.imag()) <= tol::kEigen * scale)
      fail(ErrorKind::BranchCut, "an eigenvalue of S lies on the negative real axis");

  const Complex l1 = std::log(mu1);
  const Complex l2 = std::log(mu2);
  const Complex dm = mu1 - mu2;
  const Complex dm3 = dm * dm * dm;
  const Complex d0 = (-dm * (mu1 * mu1 + mu2 * mu2) + (mu1 - 3.0 * mu2) * mu1 * mu1 * l2 +
                      (3.0 * mu1 - mu2) * mu2 * mu2 * l1) / dm3;
  const Complex d1 = (dm * (mu1 + mu2) * (mu1 * mu1 + mu1 * mu2 + mu2 * mu2) + 6.0 * mu1 * mu1 * mu2 * mu2 * (l2 - l1)) /
                     (mu1 * dm3 * mu2);
  const Complex d2 = (-2.0 * mu1 * mu1 * mu1 + 2.0 * mu2 * mu2 * mu2 + 3.0 * mu2 * (mu1 + mu2) * mu1 * (l1 - l2)) /
                     (mu1 * dm3 * mu2);
  const Complex d3 = (mu1 * mu1 - mu2 * mu2 + 2.0 * mu2 * mu1 * (l2 - l1)) / (mu1 * dm3 * mu2);

  const CMatrix s = pair.matrix();
  const CMatrix id = CMatrix::Identity(4, 4);
  const CMatrix s2 = s * s;
  const CMatrix log_s = d0 * id + d1 * s + d2 * s2 + d3 * s2 * s;
  CMatrix hf = kI * log_s;
  hf.bottomRows(2) *= -1.0;
  const BlockForm bf = split_blocks(hf, CVector::Zero(4), 1e-8);
  HamiltonianRep ham(bf.upper_left, bf.upper_right, CVector::Zero(2));

  // Newton form of the Hermite interpolant of g on (mu1, mu1, mu2, mu2).
  auto g = [](Complex x, Complex lx) { return (x - 1.0) / lx; };
  auto dg = [](Complex x, Complex lx) { return (lx - (x - 1.0) / x) / (lx * lx); };
  const Complex f1 = g(mu1, l1), f2 = g(mu2, l2);
  const Complex df1 = dg(mu1, l1), df2 = dg(mu2, l2);
  const Complex f12 = (f2 - f1) / (mu2 - mu1);
  const Complex f112 = (f12 - df1) / (mu2 - mu1);
  const Complex f122 = (df2 - f12) / (mu2 - mu1);
  const Complex f1122 = (f122 - f112) / (mu2 - mu1);
  const CMatrix a1 = s - mu1 * id;
  const CMatrix a1sq = a1 * a1;
  const CMatrix gs = f1 * id + df1 * a1 + f112 * a1sq + f1122 * a1sq * (s - mu2 * id);
  const PsiMatrix psi = PsiMatrix::from_full(times_minus_i_omega_right(gs), 1e-8);
  return {pair, std::move(ham), psi.P(), psi.Q(), mu1, mu2};
}

}  // namespace sympleq
