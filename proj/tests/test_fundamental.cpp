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

#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"

namespace sympleq {
namespace {

using testing::max_diff;
using testing::scalar;
using testing::scalar_vector;

constexpr double kPi = std::numbers::pi;

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Schema;
}

/// Random Hermitian phi with spectrum inside (-pi, pi).
CMatrix random_phi(testing::Rng& rng, Index n) {
  CMatrix phi = rng.hermitian(n);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(phi);
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  return phi * (rng.uniform(0.2, 3.0) / top);
}

TEST(HamiltonianOf, FundamentalUnitaries) {
  const HamiltonianRep d = hamiltonian_of(Displacement{scalar_vector(1.0)});
  EXPECT_EQ(d.h()(0), kI);
  EXPECT_EQ(d.matrix(), CMatrix::Zero(2, 2));
  const HamiltonianRep r = hamiltonian_of(Rotation{scalar(0.3)});
  EXPECT_EQ(r.A()(0, 0), Complex(-0.3));
  const HamiltonianRep z = hamiltonian_of(Squeeze{scalar(0.5)});
  EXPECT_EQ(z.B()(0, 0), Complex(0.0, 0.5));
  EXPECT_EQ(kind_of([] {
              CMatrix phi(2, 2);
              phi << 0.0, 1.0, 0.0, 0.0;
              hamiltonian_of(Rotation{phi});
            }),
            ErrorKind::StructureViolation);
}

TEST(HamiltonianOf, TraditionalForms) {
  // Rotation: H = -phi (a^+ a + 1/2); squeeze: H = (i/2)(z a^+2 - conj(z) a^2).
  const HamiltonianRep r = hamiltonian_of(Rotation{scalar(0.3)});
  CMatrix hr(2, 2);
  hr << -0.3, 0.0, 0.0, -0.3;
  EXPECT_EQ(r.matrix(), hr);
  const Complex z = 0.5 * std::exp(0.2 * kI);
  const HamiltonianRep s = hamiltonian_of(Squeeze{scalar(z)});
  CMatrix hs(2, 2);
  hs << 0.0, kI * z, -kI * std::conj(z), 0.0;
  EXPECT_LT(max_diff(s.matrix(), hs), 1e-16);
}

TEST(RotationClosedForm, PeriodWindow) {
  EXPECT_EQ(kind_of([] { rotation_closed_form(scalar(kPi), scalar_vector(1.0)); }), ErrorKind::OutOfPeriod);
  EXPECT_EQ(kind_of([] { rotation_closed_form(scalar(-kPi - 0.01), scalar_vector(1.0)); }), ErrorKind::OutOfPeriod);
  EXPECT_NO_THROW(rotation_closed_form(scalar(-kPi), scalar_vector(1.0)));
  const ClosedFormResult r = rotation_closed_form(scalar(kPi - 1e-9), scalar_vector(1.0));
  EXPECT_LT(std::abs(r.psi.P()(0, 0) - 2.0 / kPi), 1e-8);
}

TEST(RotationClosedForm, ZeroAngleLimit) {
  const ClosedFormResult r = rotation_closed_form(scalar(0.0), scalar_vector(1.0));
  EXPECT_LT(std::abs(r.pair.s()(0) + kI), 1e-15);
  const ClosedFormResult small = rotation_closed_form(scalar(1e-7), scalar_vector(1.0));
  EXPECT_LT(std::abs(small.pair.s()(0) + kI), 1e-7);
}

TEST(RotationClosedForm, BeamSplitter) {
  const double beta = kPi / 4;
  const ClosedFormResult r = rotation_closed_form(testing::beam_splitter_phi(beta), CVector::Zero(2));
  const double c = std::sqrt(0.5);
  CMatrix e(2, 2);
  e << c, c, -c, c;
  EXPECT_LT(max_diff(r.pair.E(), e), 1e-15);
  CMatrix p(2, 2);
  p << -kI * std::sin(beta) / beta, kI * (std::cos(beta) - 1.0) / beta, -kI * (std::cos(beta) - 1.0) / beta,
      -kI * std::sin(beta) / beta;
  EXPECT_LT(max_diff(r.psi.P(), p), 1e-15);
  EXPECT_EQ(r.psi.Q(), CMatrix::Zero(2, 2));
}

TEST(RotationClosedForm, MatchesEngine) {
  testing::Rng rng(201);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = rng.integer(1, 2);
    const CMatrix phi = random_phi(rng, n);
    const CVector h = rng.vector(n);
    const ClosedFormResult c = rotation_closed_form(phi, h);
    const ForwardResult e = forward_transform(hamiltonian_of(Rotation{phi}).with_linear(h));
    EXPECT_LT(max_diff(c.pair.matrix(), e.pair.matrix()), 1e-9);
    EXPECT_LT(max_diff(c.psi.matrix(), e.psi.matrix()), 1e-9);
    EXPECT_LT(max_diff(c.pair.s(), e.pair.s()), 1e-9);
  }
}

TEST(RotationClosedForm, Periodicity) {
  testing::Rng rng(202);
  const CMatrix phi = random_phi(rng, 2);
  const CMatrix shifted = phi + 2.0 * kPi * CMatrix::Identity(2, 2);
  EXPECT_LT(max_diff(rotation_symplectic(phi).matrix(), rotation_symplectic(shifted).matrix()), 1e-14);
  EXPECT_EQ(kind_of([&] { rotation_closed_form(shifted, CVector::Ones(2)); }), ErrorKind::OutOfPeriod);
}

TEST(RotationClosedForm, AttenuationOnly) {
  for (int j = 1; j < 1000; ++j) {
    const double phi = -kPi + 2.0 * kPi * j / 1000.0;
    if (phi == 0.0) continue;
    const double s = std::abs(rotation_closed_form(scalar(phi), scalar_vector(1.0)).pair.s()(0));
    EXPECT_NEAR(s, std::abs(std::sin(phi / 2) / (phi / 2)), 1e-14);
    EXPECT_LE(s, 1.0);
  }
}

TEST(SqueezeClosedForm, RealSqueeze) {
  const ClosedFormResult r = squeeze_closed_form(scalar(1.0), scalar_vector(1.0));
  EXPECT_LT(std::abs(r.pair.s()(0) - Complex(0.0, -0.63212055882855767)), 1e-14);
  const ClosedFormResult small = squeeze_closed_form(scalar(1e-6), scalar_vector(1.0));
  EXPECT_LT(std::abs(small.pair.s()(0) + kI), 1e-6);
  const ClosedFormResult maxed = squeeze_closed_form(scalar(-1.0), scalar_vector(1.0));
  EXPECT_NEAR(std::abs(maxed.pair.s()(0)), std::exp(1.0) - 1.0, 1e-14);
}

TEST(SqueezeClosedForm, SingularRejected) {
  CMatrix z = CMatrix::Zero(2, 2);
  z(0, 0) = 0.4;
  EXPECT_EQ(kind_of([&] { squeeze_closed_form(z, CVector::Ones(2)); }), ErrorKind::Singular);
}

TEST(SqueezeClosedForm, MatchesEngine) {
  testing::Rng rng(203);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = rng.integer(1, 2);
    const CMatrix z = rng.symmetric(n) * 1.5;
    const CVector h = rng.vector(n);
    const ClosedFormResult c = squeeze_closed_form(z, h);
    const ForwardResult e = forward_transform(hamiltonian_of(Squeeze{z}).with_linear(h));
    EXPECT_LT(max_diff(c.pair.matrix(), e.pair.matrix()), 1e-9);
    EXPECT_LT(max_diff(c.psi.matrix(), e.psi.matrix()), 1e-9);
  }
}

TEST(GeneralSymplectic, Limits) {
  testing::Rng rng(204);
  const CMatrix phi = random_phi(rng, 2);
  const CMatrix z = rng.symmetric(2);
  EXPECT_LT(max_diff(general_symplectic(CMatrix::Zero(2, 2), phi).matrix(), rotation_symplectic(phi).matrix()), 1e-14);
  EXPECT_LT(max_diff(general_symplectic(z, CMatrix::Zero(2, 2)).matrix(), squeeze_symplectic(z).matrix()), 1e-14);
}

TEST(GeneralSymplectic, SingleModeValues) {
  const SymplecticPair s = general_symplectic(scalar(0.5 * std::exp(0.7 * kI)), scalar(0.3));
  EXPECT_LT(std::abs(s.E()(0, 0) - std::cosh(0.5) * std::exp(0.3 * kI)), 1e-15);
  EXPECT_LT(std::abs(s.F()(0, 0) - std::sinh(0.5) * std::exp(0.4 * kI)), 1e-15);
}

TEST(GeneralSymplectic, EqualsExponentialProduct) {
  testing::Rng rng(205);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = rng.integer(1, 2);
    const CMatrix z = rng.symmetric(n);
    const CMatrix phi = random_phi(rng, n);
    const CMatrix s_sq = mat_exp(times_minus_i_omega_left(hamiltonian_of(Squeeze{z}).matrix()));
    const CMatrix s_rot = mat_exp(times_minus_i_omega_left(hamiltonian_of(Rotation{phi}).matrix()));
    EXPECT_LT(max_diff(general_symplectic(z, phi).matrix(), CMatrix(s_sq * s_rot)), 1e-10);
  }
}

TEST(Compose, Conventions) {
  const CMatrix phi = scalar(0.4);
  const CMatrix z = scalar(0.3 * std::exp(0.2 * kI));
  EXPECT_LT(max_diff(compose({Rotation{phi}}).matrix(), rotation_symplectic(phi).matrix()), 1e-15);
  EXPECT_LT(max_diff(compose({Rotation{phi}, Squeeze{z}}).matrix(), general_symplectic(z, phi).matrix()), 1e-14);
  const Complex alpha(0.3, -0.7);
  const SymplecticPair d = compose({Rotation{CMatrix::Zero(1, 1)}, Displacement{scalar_vector(alpha)}});
  EXPECT_LT(std::abs(d.s()(0) - alpha), 1e-15);
  // Shift of an earlier displacement is carried through the later map.
  const SymplecticPair ds = compose({Displacement{scalar_vector(alpha)}, Squeeze{z}});
  const SymplecticPair sq = squeeze_symplectic(z);
  EXPECT_LT(std::abs(ds.s()(0) - (sq.E()(0, 0) * alpha + sq.F()(0, 0) * std::conj(alpha))), 1e-15);
  EXPECT_EQ(kind_of([&] { compose({Rotation{phi}, Squeeze{CMatrix::Zero(2, 2)}}); }), ErrorKind::DimensionMismatch);
}

TEST(SingleModeSylvester, PureRotation) {
  const SingleModeInverse r = single_mode_sylvester(rotation_symplectic(scalar(0.5)));
  EXPECT_NEAR(r.ham.A()(0, 0).real(), -0.5, 1e-14);
  EXPECT_LT(std::abs(r.ham.B()(0, 0)), 1e-14);
  EXPECT_LT(std::abs(r.P - rotation_psi_scalar(0.5)), 1e-14);
}

TEST(SingleModeSylvester, MatchesArccoshForm) {
  const double r = 0.5, phi = 0.3, theta = kPi;
  const SymplecticPair s = general_symplectic(scalar(r * std::exp(kI * theta)), scalar(phi));
  const SingleModeInverse syl = single_mode_sylvester(s);
  const ArccoshResult ad = single_mode_arccosh(r, theta, phi);
  EXPECT_NEAR(std::abs(syl.P + syl.Q), std::abs(ad.P + ad.Q), 1e-8);
  EXPECT_LT(std::abs(syl.P - ad.P), 1e-10);
  EXPECT_LT(std::abs(syl.Q - ad.Q), 1e-10);
}

TEST(SingleModeSylvester, RecoversLinearTerm) {
  const HamiltonianRep h(scalar(-0.4), scalar(0.3 * kI), scalar_vector(Complex(0.2, -0.5)));
  const ForwardResult fwd = forward_transform(h);
  const SingleModeInverse inv = single_mode_sylvester(fwd.pair);
  EXPECT_LT(max_diff(inv.ham.matrix(), h.matrix()), 1e-12);
  EXPECT_LT(max_diff(inv.ham.h(), h.h()), 1e-12);
  EXPECT_LT(std::abs(inv.P - fwd.psi.P()(0, 0)), 1e-12);
  EXPECT_LT(std::abs(inv.Q - fwd.psi.Q()(0, 0)), 1e-12);
}

TEST(SingleModeSylvester, DivergenceAndBranch) {
  const double r = 0.5;
  const double phi_r = std::acos(-1.0 / std::cosh(r));
  const SymplecticPair at = general_symplectic(scalar(r), scalar(phi_r));
  EXPECT_EQ(kind_of([&] { single_mode_sylvester(at); }), ErrorKind::DegenerateEigenvalues);
  const SymplecticPair beyond = general_symplectic(scalar(r), scalar(kPi - 0.1));
  EXPECT_EQ(kind_of([&] { single_mode_sylvester(beyond); }), ErrorKind::BranchCut);
  EXPECT_EQ(kind_of([] { single_mode_sylvester(SymplecticPair::identity(1)); }), ErrorKind::DegenerateEigenvalues);
  EXPECT_EQ(kind_of([] { single_mode_sylvester(SymplecticPair::identity(2)); }), ErrorKind::DimensionMismatch);
}

TEST(ArccoshForm, PureSqueezeLimit) {
  const ArccoshResult ad = single_mode_arccosh(1.0, 0.0, 0.0);
  const ClosedFormResult c = squeeze_closed_form(scalar(1.0), scalar_vector(1.0));
  EXPECT_LT(std::abs(ad.P - c.psi.P()(0, 0)), 1e-14);
  EXPECT_LT(std::abs(ad.Q - c.psi.Q()(0, 0)), 1e-14);
}

TEST(ArccoshForm, PureRotationLimit) {
  const ArccoshResult ad = single_mode_arccosh(0.0, 0.0, 0.5);
  EXPECT_LT(std::abs(ad.P + (std::exp(0.5 * kI) - 1.0) / 0.5), 1e-14);
  EXPECT_EQ(ad.Q, Complex(0.0));
  EXPECT_NEAR(ad.T.imag(), 0.5, 1e-14);
}

TEST(ArccoshForm, RemovableSingularityAtTZero) {
  const double r = 0.7;
  const double phi = std::acos(1.0 / std::cosh(r));
  const ArccoshResult ad = single_mode_arccosh(r, 0.3, phi);
  EXPECT_LT(std::abs(ad.T), 1e-6);
  EXPECT_TRUE(std::isfinite(ad.P.real()) && std::isfinite(ad.Q.real()));
  const SymplecticPair s = general_symplectic(scalar(r * std::exp(0.3 * kI)), scalar(phi));
  const ForwardResult e = forward_transform(inverse_hamiltonian(s));
  EXPECT_LT(std::abs(ad.P - e.psi.P()(0, 0)), 1e-7);
  EXPECT_LT(std::abs(ad.Q - e.psi.Q()(0, 0)), 1e-7);
  const ArccoshResult zero = single_mode_arccosh(0.0, 0.0, 0.0);
  EXPECT_LT(std::abs(zero.P + kI), 1e-15);
}

TEST(ArccoshForm, ContinuousAcrossSeriesSwitch) {
  const double r = 0.4;
  const double base = std::acos(1.0 / std::cosh(r));
  for (double dphi : {-2e-3, -1e-3, -5e-4, 5e-4, 1e-3, 2e-3}) {
    const ArccoshResult ad = single_mode_arccosh(r, 0.2, base + dphi);
    const SymplecticPair s = general_symplectic(scalar(r * std::exp(0.2 * kI)), scalar(base + dphi));
    const ForwardResult e = forward_transform(inverse_hamiltonian(s));
    EXPECT_LT(std::abs(ad.P - e.psi.P()(0, 0)), 1e-9) << dphi;
    EXPECT_LT(std::abs(ad.Q - e.psi.Q()(0, 0)), 1e-9) << dphi;
  }
}

TEST(ArccoshForm, NearDivergence) {
  const double r = 0.5;
  const double phi_r = std::acos(-1.0 / std::cosh(r));
  EXPECT_EQ(kind_of([&] { single_mode_arccosh(r, 0.0, phi_r); }), ErrorKind::NearDivergence);
  EXPECT_NO_THROW(single_mode_arccosh(r, 0.0, phi_r + 1e-3));
}

TEST(ArccoshForm, AgreesWithSylvesterOnGrid) {
  double worst = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      for (int k = 0; k < 8; ++k) {
        const double r = 0.05 + 2.0 * i / 8.0, phi = -3.0 + 6.0 * j / 8.0 + 0.01, theta = 2.0 * kPi * k / 8.0;
        const double kk = std::cos(phi) * std::cosh(r);
        if (kk <= -1.0 + 1e-3 || std::abs(kk - 1.0) < 1e-3) continue;
        const SymplecticPair s = general_symplectic(scalar(r * std::exp(kI * theta)), scalar(phi));
        const SingleModeInverse syl = single_mode_sylvester(s);
        const ArccoshResult ad = single_mode_arccosh(r, theta, phi);
        worst = std::max({worst, std::abs(syl.P - ad.P), std::abs(syl.Q - ad.Q)});
      }
  EXPECT_LT(worst, 1e-7);
}

TEST(TwoMode, Limits) {
  const TwoModeResult no_bs = two_mode_bs_cs(0.0, 0.3, 0.2);
  CMatrix z(2, 2);
  const Complex w = 0.3 * std::exp(0.2 * kI);
  z << 0.0, w, w, 0.0;
  EXPECT_LT(max_diff(no_bs.pair.matrix(), squeeze_symplectic(z).matrix()), 1e-15);
  const TwoModeResult no_sq = two_mode_bs_cs(0.4, 0.0, 0.2);
  EXPECT_LT(max_diff(no_sq.pair.matrix(), rotation_symplectic(testing::beam_splitter_phi(0.4)).matrix()), 1e-15);
  EXPECT_EQ(kind_of([] { two_mode_bs_cs(0.0, 0.0, 0.0); }), ErrorKind::DegenerateEigenvalues);
}

TEST(TwoMode, ReferenceValues) {
  const TwoModeResult tm = two_mode_bs_cs(0.4, 0.3, 0.2);
  CMatrix p(2, 2);
  p << Complex(0, -0.98757585), Complex(0, -0.20481569), Complex(0, 0.20481569), Complex(0, -0.98757585);
  EXPECT_LT(max_diff(tm.P, p), 1e-7);
  EXPECT_NEAR(std::abs(tm.mu1 * tm.mu2), 1.0, 1e-12);
}

TEST(TwoMode, MatchesGenericPipeline) {
  testing::Rng rng(206);
  for (int trial = 0; trial < 20; ++trial) {
    const double beta = rng.uniform(-1.2, 1.2), r = rng.uniform(0.05, 1.0), theta = rng.uniform(0.0, 2 * kPi);
    const TwoModeResult tm = two_mode_bs_cs(beta, r, theta);
    const HamiltonianRep h = inverse_hamiltonian(tm.pair);
    const ForwardResult e = forward_transform(h);
    EXPECT_LT(max_diff(tm.ham.matrix(), h.matrix()), 1e-9);
    EXPECT_LT(max_diff(tm.P, e.psi.P()), 1e-7);
    EXPECT_LT(max_diff(tm.Q, e.psi.Q()), 1e-7);
    EXPECT_LT(max_diff(e.pair.matrix(), tm.pair.matrix()), 1e-9);
  }
}

}  // namespace
}  // namespace sympleq
