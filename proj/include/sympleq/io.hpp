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

// JSON encoding of every representation.
//
// Complex numbers are {"re": x, "im": y}; a bare number is read as real.
// Matrices are row-major arrays of rows; vectors are flat arrays. The mode
// count is inferred from the shapes; an explicit "n" must agree with them.
//
//   {"kind": "hamiltonian", "n": 1, "A": [[..]], "B": [[..]], "h": [..]}
//   {"kind": "symplectic", "n": 1, "E": [[..]], "F": [[..]], "s": [..],
//    "P": [[..]], "Q": [[..]], "metadata": {"path": "closed-form"}}
//   {"kind": "real-symplectic", "ordering": "qp", "S0": [[x, ..]], "s0": [x, ..]}
//
// Parameter files for `build` hold exactly one of
//   {"displacement": {"alpha": [..]}}, {"rotation": {"phi": [[..]]}},
//   {"squeeze": {"z": [[..]]}}, {"cascade": [ {..}, {..} ]}.

#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sympleq/core.hpp"
#include "sympleq/fundamental.hpp"
#include "sympleq/transform.hpp"

namespace sympleq::io {

using Json = nlohmann::ordered_json;

[[noreturn]] inline void schema_error(const std::string& field, const std::string& what) {
  fail(ErrorKind::Schema, "field '" + field + "': " + what);
}

inline Json parse_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::Schema, source + ": " + e.what());
  }
}

inline Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Schema, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

inline Complex complex_from(const Json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      if (it.key() != "re" && it.key() != "im") schema_error(field, "unexpected key '" + it.key() + "'");
    double re = 0.0, im = 0.0;
    if (j.contains("re")) {
      if (!j["re"].is_number()) schema_error(field + ".re", "expected a number");
      re = j["re"].get<double>();
    }
    if (j.contains("im")) {
      if (!j["im"].is_number()) schema_error(field + ".im", "expected a number");
      im = j["im"].get<double>();
    }
    if (!j.contains("re") && !j.contains("im")) schema_error(field, "complex object needs 're' and/or 'im'");
    return {re, im};
  }
  schema_error(field, "expected a number or {\"re\", \"im\"} object");
}

inline Json to_json(Complex c) { return Json{{"re", c.real()}, {"im", c.imag()}}; }

inline CVector vector_from(const Json& j, const std::string& field) {
  if (!j.is_array()) schema_error(field, "expected an array");
  CVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Index>(i)) = complex_from(j[i], field + "[" + std::to_string(i) + "]");
  return v;
}

inline CMatrix matrix_from(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) schema_error(field, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array()) schema_error(field + "[" + std::to_string(i) + "]", "expected a row array");
    if (i == 0) cols = j[i].size();
    if (j[i].size() != cols) schema_error(field + "[" + std::to_string(i) + "]", "ragged row");
  }
  CMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k)
      m(static_cast<Index>(i), static_cast<Index>(k)) =
          complex_from(j[i][k], field + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
  return m;
}

inline CMatrix square_from(const Json& j, const std::string& field) {
  CMatrix m = matrix_from(j, field);
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << "expected a square matrix, got " << m.rows() << "x" << m.cols();
    schema_error(field, os.str());
  }
  return m;
}

inline RMatrix real_matrix_from(const Json& j, const std::string& field) {
  const CMatrix m = square_from(j, field);
  if (max_abs(RMatrix(m.imag())) != 0.0) schema_error(field, "expected real entries");
  return m.real();
}

inline Json to_json(const CVector& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
  return a;
}

inline Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json to_json(const RMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json to_json(const RVector& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

inline const Json& require(const Json& j, const char* key) {
  if (!j.is_object()) schema_error("<root>", "expected a JSON object");
  if (!j.contains(key)) schema_error(key, "missing");
  return j.at(key);
}

inline std::string kind_of(const Json& j) {
  const Json& k = require(j, "kind");
  if (!k.is_string()) schema_error("kind", "expected a string");
  return k.get<std::string>();
}

inline void check_n(const Json& j, Index n) {
  if (!j.contains("n")) return;
  if (!j["n"].is_number_integer() || j["n"].get<long long>() != n) {
    std::ostringstream os;
    os << "does not match the matrix shapes (n = " << n << ")";
    schema_error("n", os.str());
  }
}

/// Blocks of a Hamiltonian file before any structural validation.
struct RawHamiltonian {
  CMatrix A, B;
  CVector h;
};

inline RawHamiltonian raw_hamiltonian_from(const Json& j) {
  if (kind_of(j) != "hamiltonian") schema_error("kind", "expected \"hamiltonian\"");
  RawHamiltonian raw{square_from(require(j, "A"), "A"), square_from(require(j, "B"), "B"), {}};
  const Index n = raw.A.rows();
  raw.h = j.contains("h") ? vector_from(j["h"], "h") : CVector::Zero(n);
  if (raw.B.rows() != n) schema_error("B", "size differs from A");
  if (raw.h.size() != n) schema_error("h", "length differs from the size of A");
  check_n(j, n);
  return raw;
}

inline HamiltonianRep hamiltonian_from(const Json& j) {
  RawHamiltonian raw = raw_hamiltonian_from(j);
  return HamiltonianRep(std::move(raw.A), std::move(raw.B), std::move(raw.h));
}

inline Json to_json(const HamiltonianRep& h) {
  return Json{{"kind", "hamiltonian"}, {"n", h.n()}, {"A", to_json(h.A())}, {"B", to_json(h.B())},
              {"h", to_json(h.h())}};
}

struct RawSymplectic {
  CMatrix E, F;
  CVector s;
  std::optional<CMatrix> P, Q;
};

inline RawSymplectic raw_symplectic_from(const Json& j) {
  if (kind_of(j) != "symplectic") schema_error("kind", "expected \"symplectic\"");
  RawSymplectic raw{square_from(require(j, "E"), "E"), square_from(require(j, "F"), "F"), {}, {}, {}};
  const Index n = raw.E.rows();
  raw.s = j.contains("s") ? vector_from(j["s"], "s") : CVector::Zero(n);
  if (raw.F.rows() != n) schema_error("F", "size differs from E");
  if (raw.s.size() != n) schema_error("s", "length differs from the size of E");
  if (j.contains("P") != j.contains("Q")) schema_error(j.contains("P") ? "Q" : "P", "P and Q come together");
  if (j.contains("P")) {
    raw.P = square_from(j["P"], "P");
    raw.Q = square_from(j["Q"], "Q");
    if (raw.P->rows() != n) schema_error("P", "size differs from E");
    if (raw.Q->rows() != n) schema_error("Q", "size differs from E");
  }
  check_n(j, n);
  return raw;
}

inline SymplecticPair symplectic_from(const Json& j) {
  RawSymplectic raw = raw_symplectic_from(j);
  return SymplecticPair(std::move(raw.E), std::move(raw.F), std::move(raw.s));
}

inline Json to_json(const SymplecticPair& p) {
  return Json{{"kind", "symplectic"}, {"n", p.n()}, {"E", to_json(p.E())}, {"F", to_json(p.F())},
              {"s", to_json(p.s())}};
}

inline Json to_json(const ForwardResult& r) {
  Json j = to_json(r.pair);
  j["P"] = to_json(r.psi.P());
  j["Q"] = to_json(r.psi.Q());
  j["metadata"] = Json{{"path", std::string(to_string(r.path))}, {"rank", r.rank}};
  return j;
}

inline RealSymplecticPair real_symplectic_from(const Json& j) {
  if (kind_of(j) != "real-symplectic") schema_error("kind", "expected \"real-symplectic\"");
  if (j.contains("ordering") && j["ordering"] != "qp") schema_error("ordering", "only \"qp\" is supported");
  RMatrix s0 = real_matrix_from(require(j, "S0"), "S0");
  if (s0.rows() % 2 != 0) schema_error("S0", "expected an even size 2n");
  RVector v0 = RVector::Zero(s0.rows());
  if (j.contains("s0")) {
    const CVector c = vector_from(j["s0"], "s0");
    if (c.size() != s0.rows()) schema_error("s0", "length differs from the size of S0");
    if (max_abs(RVector(c.imag())) != 0.0) schema_error("s0", "expected real entries");
    v0 = c.real();
  }
  check_n(j, s0.rows() / 2);
  return RealSymplecticPair(std::move(s0), std::move(v0));
}

inline Json to_json(const RealSymplecticPair& p) {
  return Json{{"kind", "real-symplectic"}, {"n", p.n()}, {"ordering", "qp"}, {"S0", to_json(p.S0())},
              {"s0", to_json(p.s0())}};
}

inline FuParams fu_params_from(const Json& j, const std::string& where) {
  if (!j.is_object() || j.size() != 1)
    schema_error(where, "expected exactly one of \"displacement\", \"rotation\", \"squeeze\"");
  const auto it = j.begin();
  const std::string key = it.key();
  const Json& body = it.value();
  const std::string field = where.empty() ? key : where + "." + key;
  if (key == "displacement") return Displacement{vector_from(require(body, "alpha"), field + ".alpha")};
  if (key == "rotation") return Rotation{square_from(require(body, "phi"), field + ".phi")};
  if (key == "squeeze") return Squeeze{square_from(require(body, "z"), field + ".z")};
  schema_error(field, "unknown unitary");
}

/// A parameter file: one fundamental unitary or a cascade of them.
inline std::vector<FuParams> params_from(const Json& j) {
  if (j.is_object() && j.size() == 1 && j.contains("cascade")) {
    const Json& c = j["cascade"];
    if (!c.is_array() || c.empty()) schema_error("cascade", "expected a non-empty array");
    std::vector<FuParams> out;
    for (std::size_t i = 0; i < c.size(); ++i) out.push_back(fu_params_from(c[i], "cascade[" + std::to_string(i) + "]"));
    return out;
  }
  return {fu_params_from(j, "")};
}

}  // namespace sympleq::io
