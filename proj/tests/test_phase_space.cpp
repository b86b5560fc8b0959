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

#include "oracles.hpp"

namespace sympleq {
namespace {

using testing::max_diff;
using testing::scalar;

TEST(QuadratureMap, IsUnitary) {
  for (Index n : {1, 2, 3}) {
    const CMatrix l = quadrature_map(n);
    EXPECT_LT(max_diff(CMatrix(l * l.adjoint()), CMatrix::Identity(2 * n, 2 * n)), 1e-15);
  }
}

TEST(ToReal, Identity) {
  const RealSymplecticPair r = to_real(SymplecticPair::identity(2));
  EXPECT_LT(max_diff(r.S0(), RMatrix::Identity(4, 4)), 1e-15);
  EXPECT_EQ(r.s0(), RVector::Zero(4));
}

TEST(ToReal, RealSqueezeIsDiagonal) {
  const RealSymplecticPair r = to_real(squeeze_symplectic(scalar(0.7)));
  RMatrix expected(2, 2);
  expected << std::exp(0.7), 0.0, 0.0, std::exp(-0.7);
  EXPECT_LT(max_diff(r.S0(), expected), 1e-14);
}

TEST(ToReal, RotationIsOrthogonal) {
  const RealSymplecticPair r = to_real(rotation_symplectic(scalar(0.4)));
  RMatrix expected(2, 2);
  expected << std::cos(0.4), -std::sin(0.4), std::sin(0.4), std::cos(0.4);
  EXPECT_LT(max_diff(r.S0(), expected), 1e-15);
}

TEST(ToReal, DisplacementShift) {
  CVector alpha(1);
  alpha(0) = Complex(0.3, -0.8);
  const RealSymplecticPair r = to_real(pair_of(Displacement{alpha}));
  EXPECT_NEAR(r.s0()(0), std::sqrt(2.0) * 0.3, 1e-15);
  EXPECT_NEAR(r.s0()(1), std::sqrt(2.0) * -0.8, 1e-15);
}

TEST(ToReal, MatchesBlockFormula) {
  testing::Rng rng(301);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = rng.integer(1, 3);
    const SymplecticPair p = forward_transform(rng.hamiltonian(n)).pair;
    const RealSymplecticPair r = to_real(p);
    EXPECT_LT(max_diff(r.S0(), real_block_formula(p)), 1e-10);
    EXPECT_LT(r.residual(), 1e-9);
  }
}

TEST(ToComplex, InverseSqueeze) {
  RMatrix s0(2, 2);
  s0 << 2.0, 0.0, 0.0, 0.5;
  const SymplecticPair p = to_complex(RealSymplecticPair(s0, RVector::Zero(2)));
  EXPECT_NEAR(p.E()(0, 0).real(), 1.25, 1e-15);
  EXPECT_NEAR(p.F()(0, 0).real(), 0.75, 1e-15);
  EXPECT_LT(std::abs(p.E()(0, 0).imag()) + std::abs(p.F()(0, 0).imag()), 1e-15);
}

TEST(ToComplex, RejectsNonSymplectic) {
  RMatrix s0(2, 2);
  s0 << 2.0, 0.0, 0.0, 2.0;
  try {
    to_complex(RealSymplecticPair::unchecked(s0, RVector::Zero(2)));
    FAIL() << "expected StructureViolation";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::StructureViolation);
  }
}

TEST(PhaseSpace, RoundTrip) {
  testing::Rng rng(302);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = rng.integer(1, 3);
    const SymplecticPair p = forward_transform(rng.hamiltonian(n)).pair;
    const SymplecticPair back = to_complex(to_real(p));
    EXPECT_LT(max_diff(back.matrix(), p.matrix()), 1e-10);
    EXPECT_LT(max_diff(back.s(), p.s()), 1e-10);
  }
}

TEST(PhaseSpace, Homomorphism) {
  testing::Rng rng(303);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = rng.integer(1, 2);
    const SymplecticPair a = forward_transform(rng.hamiltonian(n)).pair;
    const SymplecticPair b = forward_transform(rng.hamiltonian(n)).pair;
    const RealSymplecticPair ra = to_real(a), rb = to_real(b);
    const RealSymplecticPair rc = to_real(compose(a, b));
    EXPECT_LT(max_diff(rc.S0(), RMatrix(rb.S0() * ra.S0())), 1e-9);
    EXPECT_LT(max_diff(rc.s0(), RVector(rb.S0() * ra.s0() + rb.s0())), 1e-9);
  }
}

}  // namespace
}  // namespace sympleq
