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

// Complex <-> real symplectic pairs through the quadrature map
// [q; p] = L [a; a^dagger], q = (a + a^dagger)/sqrt2, p = -i(a - a^dagger)/sqrt2.

#pragma once

#include <cmath>
#include <sstream>

#include "sympleq/core.hpp"

namespace sympleq {

/// L = (1/sqrt2) [[I, I], [-i I, i I]].
inline CMatrix quadrature_map(Index n) {
  CMatrix l(2 * n, 2 * n);
  const CMatrix id = CMatrix::Identity(n, n);
  l << id, id, -kI * id, kI * id;
  return l / std::sqrt(2.0);
}

/// S0 = L S L^H, s0 = L [s; conj s]. The imaginary residue must stay below
/// tol::kStructure (relative to the largest entry) before it is dropped.
inline RealSymplecticPair to_real(const SymplecticPair& pair) {
  const Index n = pair.n();
  const CMatrix l = quadrature_map(n);
  const CMatrix s0 = l * pair.matrix() * l.adjoint();
  const CVector v0 = l * pair.vector();
  const double residue = std::max(max_abs(RMatrix(s0.imag())), max_abs(RVector(v0.imag())));
  const double scale = std::max({max_abs(s0), max_abs(v0), 1.0});
  if (residue > tol::kStructure * scale) {
    std::ostringstream os;
    os << "imaginary residue " << residue << " in the real representation";
    fail(ErrorKind::StructureViolation, os.str());
  }
  return RealSymplecticPair(s0.real(), v0.real());
}

/// Blockwise form of S0: [[Re(E+F), -Im(E-F)], [Im(E+F), Re(E-F)]].
inline RMatrix real_block_formula(const SymplecticPair& pair) {
  const Index n = pair.n();
  const CMatrix plus = pair.E() + pair.F();
  const CMatrix minus = pair.E() - pair.F();
  RMatrix s0(2 * n, 2 * n);
  s0 << plus.real(), -minus.imag(), plus.imag(), minus.real();
  return s0;
}

/// S = L^H S0 L, s = L^H s0. Fails with StructureViolation when the result
/// does not carry the conjugate block pattern.
inline SymplecticPair to_complex(const RealSymplecticPair& real) {
  const Index n = real.n();
  const CMatrix l = quadrature_map(n);
  const CMatrix s = l.adjoint() * real.S0().cast<Complex>() * l;
  const CVector v = l.adjoint() * real.s0().cast<Complex>();
  BlockForm b = split_blocks(s, v);
  return SymplecticPair(std::move(b.upper_left), std::move(b.upper_right), std::move(b.upper));
}

}  // namespace sympleq
