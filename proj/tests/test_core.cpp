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

TEST(Omega, SingleModeForms) {
  CMatrix w(2, 2);
  w << 1.0, 0.0, 0.0, -1.0;
  EXPECT_EQ(omega(1), w);
  RMatrix w0(2, 2);
  w0 << 0.0, 1.0, -1.0, 0.0;
  EXPECT_EQ(omega0(1), w0);
}

TEST(Omega, SquaresToPlusMinusIdentity) {
  for (Index n : {1, 2, 3}) {
    EXPECT_EQ(omega(n) * omega(n), CMatrix::Identity(2 * n, 2 * n));
    EXPECT_EQ(omega0(n) * omega0(n), -RMatrix::Identity(2 * n, 2 * n));
  }
}

TEST(HamiltonianRep, DiagonalWhenBVanishes) {
  const HamiltonianRep h(scalar(0.7), scalar(0.0), testing::scalar_vector(0.0));
  CMatrix expected(2, 2);
  expected << 0.7, 0.0, 0.0, 0.7;
  EXPECT_EQ(h.matrix(), expected);
}

TEST(HamiltonianRep, SingularMatrixAssembles) {
  const double alpha = 1.3, phi = 0.4;
  const HamiltonianRep h(scalar(alpha), scalar(alpha * std::exp(kI * phi)), testing::scalar_vector(0.0));
  CMatrix expected(2, 2);
  expected << alpha, alpha * std::exp(kI * phi), alpha * std::exp(-kI * phi), alpha;
  EXPECT_LT(max_diff(h.matrix(), expected), 1e-15);
}

TEST(HamiltonianRep, BeamSplitterMatrix) {
  const double beta = 0.6;
  const HamiltonianRep h = HamiltonianRep::quadratic(-testing::beam_splitter_phi(beta), CMatrix::Zero(2, 2));
  CMatrix expected = CMatrix::Zero(4, 4);
  expected(0, 1) = kI * beta;
  expected(1, 0) = -kI * beta;
  expected(2, 3) = -kI * beta;
  expected(3, 2) = kI * beta;
  EXPECT_LT(max_diff(h.matrix(), expected), 1e-15);
  EXPECT_EQ(hermitian_deviation(h.matrix()), 0.0);
}

TEST(HamiltonianRep, RejectsNonHermitianA) {
  CMatrix a(2, 2);
  a << 1.0, 0.5, 0.2, 1.0;
  try {
    HamiltonianRep(a, CMatrix::Zero(2, 2), CVector::Zero(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::StructureViolation);
  }
}

TEST(HamiltonianRep, RejectsNonSymmetricB) {
  CMatrix b(2, 2);
  b << 0.0, 0.5, 0.4, 0.0;
  EXPECT_THROW(HamiltonianRep(CMatrix::Zero(2, 2), b, CVector::Zero(2)), Error);
}

TEST(HamiltonianRep, RejectsShapeAndNonFinite) {
  try {
    HamiltonianRep(CMatrix::Zero(2, 2), CMatrix::Zero(3, 3), CVector::Zero(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
  try {
    HamiltonianRep(scalar(NAN), scalar(0.0), testing::scalar_vector(0.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonFinite);
  }
}

TEST(SplitBlocks, IdentityPair) {
  const SymplecticPair p = SymplecticPair::from_full(CMatrix::Identity(4, 4), CVector::Zero(4));
  EXPECT_EQ(p.E(), CMatrix::Identity(2, 2));
  EXPECT_EQ(p.F(), CMatrix::Zero(2, 2));
  EXPECT_EQ(p.s(), CVector::Zero(2));
}

TEST(SplitBlocks, SqueezeBlocks) {
  CMatrix s(2, 2);
  s << std::cosh(1.0), std::sinh(1.0), std::sinh(1.0), std::cosh(1.0);
  const SymplecticPair p = SymplecticPair::from_full(s, CVector::Zero(2));
  EXPECT_DOUBLE_EQ(p.E()(0, 0).real(), std::cosh(1.0));
  EXPECT_DOUBLE_EQ(p.F()(0, 0).real(), std::sinh(1.0));
}

TEST(SplitBlocks, DetectsViolation) {
  CMatrix s = CMatrix::Identity(4, 4);
  s(3, 2) += 1e-3;
  try {
    split_blocks(s, CVector::Zero(4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::StructureViolation);
  }
  CVector v(2);
  v << 1.0, 2.0;
  EXPECT_THROW(split_blocks(CMatrix::Identity(2, 2), v), Error);
}

TEST(SplitBlocks, RoundTripIsExact) {
  testing::Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = rng.integer(1, 4);
    const HamiltonianRep h = rng.hamiltonian(n);
    const auto [m, v] = assemble_full(h);
    const HamiltonianRep back = HamiltonianRep::from_full(m, v);
    EXPECT_EQ(back.matrix(), m);
    EXPECT_EQ(back.vector(), v);
  }
}

TEST(StructureClosure, SumAndProductKeepPattern) {
  testing::Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = rng.integer(1, 4);
    const CMatrix x = assemble_blocks(rng.matrix(n, n), rng.matrix(n, n));
    const CMatrix y = assemble_blocks(rng.matrix(n, n), rng.matrix(n, n));
    EXPECT_LT(block_structure_deviation(x + y), 1e-15);
    EXPECT_LT(block_structure_deviation(x * y), 1e-14);
  }
}

TEST(SymplecticPair, RejectsNonSymplectic) {
  CMatrix e = CMatrix::Identity(1, 1) * 2.0;
  try {
    SymplecticPair(e, CMatrix::Zero(1, 1), CVector::Zero(1));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::StructureViolation);
  }
  EXPECT_NO_THROW(SymplecticPair::unchecked(e, CMatrix::Zero(1, 1), CVector::Zero(1)));
}

TEST(SymplecticPair, SqueezeResidualIsTiny) {
  const SymplecticPair p(scalar(std::cosh(2.0)), scalar(std::sinh(2.0) * std::exp(kI * 0.3)), CVector::Zero(1));
  EXPECT_LT(p.residual(), 1e-12);
}

TEST(PsiMatrix, ApplyMatchesFullProduct) {
  testing::Rng rng(3);
  const PsiMatrix psi(rng.matrix(3, 3), rng.matrix(3, 3));
  const CVector h = rng.vector(3);
  const CVector full = psi.matrix() * assemble_vector(h);
  EXPECT_LT(max_diff(CVector(full.head(3)), psi.apply(h)), 1e-14);
  EXPECT_LT(max_diff(CVector(full.tail(3)), CVector(psi.apply(h).conjugate())), 1e-14);
}

TEST(RealSymplecticPair, ValidatesCondition) {
  RMatrix s0(2, 2);
  s0 << 2.0, 0.0, 0.0, 0.5;
  EXPECT_NO_THROW(RealSymplecticPair(s0, RVector::Zero(2)));
  s0(1, 1) = 0.6;
  EXPECT_THROW(RealSymplecticPair(s0, RVector::Zero(2)), Error);
}

TEST(ErrorKind, NamesAreStable) {
  EXPECT_EQ(to_string(ErrorKind::BranchCut), "BranchCut");
  try {
    fail(ErrorKind::Singular, "x");
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "Singular: x");
  }
}

}  // namespace
}  // namespace sympleq
