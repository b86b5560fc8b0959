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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sympleq {

enum class ErrorKind {
  StructureViolation,
  NonFinite,
  BranchCut,
  Singular,
  IllConditioned,
  DegenerateEigenvalues,
  NoConvergence,
  OutOfPeriod,
  NearDivergence,
  DimensionMismatch,
  DimensionOverflow,
  TruncationDominates,
  Schema,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::StructureViolation: return "StructureViolation";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::BranchCut: return "BranchCut";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::DegenerateEigenvalues: return "DegenerateEigenvalues";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::OutOfPeriod: return "OutOfPeriod";
    case ErrorKind::NearDivergence: return "NearDivergence";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DimensionOverflow: return "DimensionOverflow";
    case ErrorKind::TruncationDominates: return "TruncationDominates";
    case ErrorKind::Schema: return "Schema";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so that
/// callers (the CLI in particular) can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, std::string(to_string(kind)) + ": " + what);
}

}  // namespace sympleq
