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

// The `sympleq` command line. `run` takes the arguments and the two output
// streams so that tests can drive it in-process.
//
// Exit codes: 0 success, 1 a verify check failed, 2 bad input (schema,
// shapes, non-finite values, rotation outside its period, Fock cap),
// 3 branch cut, 4 structure violation, 5 conditioning (ill-conditioned,
// singular, degenerate, divergent or non-convergent).

#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sympleq/fock.hpp"
#include "sympleq/fundamental.hpp"
#include "sympleq/io.hpp"
#include "sympleq/phase_space.hpp"
#include "sympleq/sweep.hpp"
#include "sympleq/transform.hpp"

namespace sympleq::cli {

using io::Json;

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Schema:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::DimensionOverflow:
    case ErrorKind::NonFinite:
    case ErrorKind::OutOfPeriod:
      return 2;
    case ErrorKind::BranchCut:
      return 3;
    case ErrorKind::StructureViolation:
      return 4;
    case ErrorKind::IllConditioned:
    case ErrorKind::Singular:
    case ErrorKind::DegenerateEigenvalues:
    case ErrorKind::NoConvergence:
    case ErrorKind::NearDivergence:
    case ErrorKind::TruncationDominates:
      return 5;
  }
  return 2;
}

/// "1", "-0.5", "0.3,0.2" (re,im).
inline Complex parse_complex_arg(const std::string& text, const char* option) {
  std::istringstream in(text);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(in >> re)) fail(ErrorKind::Schema, std::string("option ") + option + ": expected 're' or 're,im'");
  if (in >> comma) {
    if (comma != ',' || !(in >> im)) fail(ErrorKind::Schema, std::string("option ") + option + ": expected 're,im'");
  }
  std::string rest;
  if (in >> rest) fail(ErrorKind::Schema, std::string("option ") + option + ": trailing characters");
  return {re, im};
}

inline SweepSpec sweep_spec_from(const Json& j) {
  if (!j.is_object()) fail(ErrorKind::Schema, "sweep spec must be a JSON object");
  static const std::vector<std::string> allowed = {"study", "r", "theta", "r_min", "r_max", "points", "h", "alpha"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      io::schema_error(it.key(), "unknown sweep field");
  SweepSpec spec;
  const Json& study = io::require(j, "study");
  if (!study.is_string()) io::schema_error("study", "expected a string");
  spec.study = study.get<std::string>();
  if (std::find(sweep_studies().begin(), sweep_studies().end(), spec.study) == sweep_studies().end())
    io::schema_error("study", "unknown study '" + spec.study + "'");
  auto number = [&](const char* key, double& dst) {
    if (!j.contains(key)) return;
    if (!j[key].is_number()) io::schema_error(key, "expected a number");
    dst = j[key].get<double>();
    if (!std::isfinite(dst)) io::schema_error(key, "expected a finite number");
  };
  number("r", spec.r);
  number("theta", spec.theta);
  number("r_min", spec.r_min);
  number("r_max", spec.r_max);
  if (j.contains("points")) {
    if (!j["points"].is_number_integer() || j["points"].get<long long>() < 2 || j["points"].get<long long>() > 1000000)
      io::schema_error("points", "expected an integer in [2, 1000000]");
    spec.points = static_cast<int>(j["points"].get<long long>());
  }
  if (j.contains("h") && j.contains("alpha")) io::schema_error("alpha", "give either h or alpha");
  if (j.contains("h")) spec.h = io::complex_from(j["h"], "h");
  if (j.contains("alpha")) spec.h = kI * io::complex_from(j["alpha"], "alpha");
  if (spec.r < 0.0 || spec.r_min < 0.0) io::schema_error("r", "must be non-negative");
  return spec;
}

struct CheckResult {
  std::string name;
  bool pass = true;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

inline Json to_json(const CheckResult& c) {
  Json j{{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}, {"tolerance", c.tolerance}};
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

struct VerifyOptions {
  std::optional<double> tol;
  bool fock = false;
  bool series = false;
};

/// Psi of the engine against the defining series, and the shift it implies.
inline void check_psi(const HamiltonianRep& ham, double tol, std::vector<CheckResult>& out) {
  const ForwardResult fwd = forward_transform(ham);
  const PsiMatrix series = psi_series_oracle(ham, 1e-14);
  const double r = max_abs(CMatrix(fwd.psi.matrix() - series.matrix()));
  out.push_back({"psi-series", r <= tol, r, tol, "engine path " + std::string(to_string(fwd.path))});
}

inline void check_fock(const HamiltonianRep& ham, const SymplecticPair& pair, std::vector<CheckResult>& out) {
  if (ham.n() > 2) {
    out.push_back({"heisenberg", true, 0.0, 0.0, "skipped: the Fock oracle supports n <= 2"});
    return;
  }
  HeisenbergOptions opt;
  opt.max_dim = max_fock_dim_from_env();
  const Index d = default_fock_levels(ham.n());
  const HeisenbergReport rep = heisenberg_check(ham, pair, d, opt);
  std::ostringstream os;
  os << "d = " << rep.d << ", excitation < " << rep.level << ", verdict " << to_string(rep.verdict);
  if (rep.residual_larger_d >= 0.0) os << ", residual at d + 10 = " << rep.residual_larger_d;
  out.push_back({"heisenberg", rep.pass(), rep.residual, rep.tolerance, os.str()});
}

inline void verify_pair(const SymplecticPair& pair, const std::optional<CMatrix>& p, const std::optional<CMatrix>& q,
                        const VerifyOptions& opt, std::vector<CheckResult>& out) {
  const double tol_s = opt.tol.value_or(tol::kSymplectic);
  const double tol_psi = opt.tol.value_or(tol::kNumeric);
  const double res = pair.residual();
  out.push_back({"symplectic", res <= tol_s, res, tol_s, ""});
  if (res > tol_s) return;
  std::optional<HamiltonianRep> ham;
  try {
    ham = inverse_hamiltonian(pair);
  } catch (const Error& e) {
    out.push_back({"logarithm", false, 0.0, 0.0, e.what()});
    return;
  }
  const ForwardResult fwd = forward_transform(*ham);
  const double rt = std::max(max_abs(CMatrix(fwd.pair.matrix() - pair.matrix())),
                             max_abs(CVector(fwd.pair.s() - pair.s())));
  out.push_back({"round-trip", rt <= 1e-8, rt, 1e-8, "exp(-i Omega H) with H = i Omega log S"});
  check_psi(*ham, tol_psi, out);
  if (p) {
    const PsiMatrix series = psi_series_oracle(*ham, 1e-14);
    const double r = std::max(max_abs(CMatrix(*p - series.P())), max_abs(CMatrix(*q - series.Q())));
    out.push_back({"psi-file", r <= tol_psi, r, tol_psi, "P, Q from the file against the series"});
  }
  if (opt.fock) check_fock(*ham, pair, out);
}

inline Json run_verify(const Json& doc, const VerifyOptions& opt) {
  std::vector<CheckResult> checks;
  const std::string kind = io::kind_of(doc);
  if (kind == "hamiltonian") {
    io::RawHamiltonian raw = io::raw_hamiltonian_from(doc);
    if (!all_finite(raw.A) || !all_finite(raw.B) || !all_finite(raw.h))
      fail(ErrorKind::NonFinite, "Hamiltonian has non-finite entries");
    const double scale = std::max({max_abs(raw.A), max_abs(raw.B), 1e-300});
    const double dev = std::max(hermitian_deviation(raw.A), symmetric_deviation(raw.B)) / scale;
    checks.push_back({"structure", dev <= tol::kStructure, dev, tol::kStructure, "A Hermitian, B symmetric (relative)"});
    if (dev <= tol::kStructure) {
      const HamiltonianRep ham(raw.A, raw.B, raw.h);
      const ForwardResult fwd = forward_transform(ham);
      const double tol_s = opt.tol.value_or(tol::kSymplectic);
      const double res = fwd.pair.residual();
      checks.push_back({"symplectic", res <= tol_s, res, tol_s, ""});
      check_psi(ham, opt.tol.value_or(tol::kNumeric), checks);
      if (opt.fock) check_fock(ham, fwd.pair, checks);
    }
  } else if (kind == "symplectic") {
    io::RawSymplectic raw = io::raw_symplectic_from(doc);
    const SymplecticPair pair = SymplecticPair::unchecked(raw.E, raw.F, raw.s);
    verify_pair(pair, raw.P, raw.Q, opt, checks);
  } else if (kind == "real-symplectic") {
    const RealSymplecticPair real = io::real_symplectic_from(doc);
    const double res = real.residual();
    const double tol_s = opt.tol.value_or(tol::kSymplectic);
    checks.push_back({"real-symplectic", res <= tol_s, res, tol_s, "S0 Omega0 S0^T = Omega0"});
    if (res <= tol_s) verify_pair(to_complex(real), std::nullopt, std::nullopt, opt, checks);
  } else {
    io::schema_error("kind", "unknown kind '" + kind + "'");
  }
  Json list = Json::array();
  bool all = true;
  for (const auto& c : checks) {
    list.push_back(to_json(c));
    all = all && c.pass;
  }
  return Json{{"kind", "verify-report"}, {"input", kind}, {"series_requested", opt.series}, {"pass", all},
              {"checks", std::move(list)}};
}

inline void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) fail(ErrorKind::Schema, "cannot write '" + out_path + "'");
  f << text;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian unitaries: quadratic Hamiltonians and complex symplectic maps", "sympleq"};
  app.require_subcommand(1);
  // "-h" stays free for the sweep option --h.
  app.set_help_flag("--help", "print this help and exit");
  std::string input, out_path, h_arg, alpha_arg;
  double tol_value = 0.0;
  bool fock = false, series = false;

  auto* build = app.add_subcommand("build", "Hamiltonian (H, h) of a unitary given by parameters");
  auto* transform = app.add_subcommand("transform", "(H, h) -> (S, s) with P, Q and the evaluation path");
  auto* invert = app.add_subcommand("invert", "(S, s) -> (H, h) on the principal branch");
  auto* to_real_cmd = app.add_subcommand("to-real", "(S, s) -> real pair (S0, s0) in [q; p] ordering");
  auto* sweep = app.add_subcommand("sweep", "single-mode amplification study as CSV");
  auto* verify = app.add_subcommand("verify", "check a representation file; exit 1 on failure");
  for (auto* sub : {build, transform, invert, to_real_cmd, sweep, verify}) {
    sub->add_option("file", input, "input JSON file")->required();
    sub->add_option("--out", out_path, "write the result here instead of stdout");
  }
  transform->add_flag("--series", series, "compute Psi from its defining series");
  sweep->set_help_flag("--help", "print this help and exit");
  sweep->add_option("--h", h_arg, "linear term h as 're' or 're,im'");
  sweep->add_option("--alpha", alpha_arg, "displacement alpha = -i h as 're' or 're,im'")->excludes("--h");
  auto* tol_opt = verify->add_option("--tol", tol_value, "tolerance for the symplectic and Psi checks");
  verify->add_flag("--fock", fock, "also run the truncated Fock-space check (n <= 2)");
  verify->add_flag("--series", series, "compare against the series oracle (always on)");

  std::vector<const char*> argv{"sympleq"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    std::string text;
    if (build->parsed()) {
      const std::vector<FuParams> params = io::params_from(io::read_file(input));
      const HamiltonianRep ham =
          params.size() == 1 ? hamiltonian_of(params.front()) : inverse_hamiltonian(compose(params));
      text = io::to_json(ham).dump(2) + "\n";
    } else if (transform->parsed()) {
      const ForwardResult res = forward_transform(io::hamiltonian_from(io::read_file(input)), series);
      text = io::to_json(res).dump(2) + "\n";
    } else if (invert->parsed()) {
      text = io::to_json(inverse_hamiltonian(io::symplectic_from(io::read_file(input)))).dump(2) + "\n";
    } else if (to_real_cmd->parsed()) {
      text = io::to_json(to_real(io::symplectic_from(io::read_file(input)))).dump(2) + "\n";
    } else if (sweep->parsed()) {
      SweepSpec spec = sweep_spec_from(io::read_file(input));
      if (!h_arg.empty()) spec.h = parse_complex_arg(h_arg, "--h");
      if (!alpha_arg.empty()) spec.h = kI * parse_complex_arg(alpha_arg, "--alpha");
      std::ostringstream csv;
      write_csv(run_sweep(spec), csv);
      text = csv.str();
    } else if (verify->parsed()) {
      VerifyOptions opt;
      if (tol_opt->count() > 0) {
        if (!(tol_value > 0.0)) fail(ErrorKind::Schema, "option --tol: must be positive");
        opt.tol = tol_value;
      }
      opt.fock = fock;
      opt.series = series;
      const Json report = run_verify(io::read_file(input), opt);
      emit(report.dump(2) + "\n", out_path, out);
      return report["pass"].get<bool>() ? 0 : 1;
    }
    emit(text, out_path, out);
    return 0;
  } catch (const Error& e) {
    err << Json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}.dump() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << Json{{"error", "Schema"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
}

}  // namespace sympleq::cli
