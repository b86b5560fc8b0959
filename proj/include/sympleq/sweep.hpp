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

// Single-mode displacement-amplification studies: |s| over parameter grids,
// the divergence locus cos(phi) cosh(r) = -1 and the amplification boundary
// |s(r, theta)| = 1.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "sympleq/fundamental.hpp"
#include "sympleq/transform.hpp"

namespace sympleq {

/// |s| of the single-mode squeeze with h = 1:
/// 2 sinh(r/2) sqrt(cosh r - sinh r cos theta) / r.
inline double squeeze_amplification(double r, double theta) {
  if (r == 0.0) return 1.0;
  return 2.0 * std::sinh(r / 2.0) * std::sqrt(std::cosh(r) - std::sinh(r) * std::cos(theta)) / r;
}

/// theta in [0, pi] with squeeze_amplification(r, theta) = 1, by bisection.
inline double amplification_boundary(double r, double tol = 1e-10) {
  if (!(r > 0.0)) fail(ErrorKind::StructureViolation, "amplification boundary needs r > 0");
  double lo = 0.0, hi = std::numbers::pi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (squeeze_amplification(r, mid) < 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// s for rotation phi followed by squeeze r e^{i theta}, single mode.
inline Complex rot_squeeze_shift(double r, double theta, double phi, Complex h) {
  const ArccoshResult pq = single_mode_arccosh(r, theta, phi);
  return pq.P * h + pq.Q * std::conj(h);
}

namespace detail {

/// Maximises f on [a, b] by golden-section search down to width `tol`.
inline double golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d, d = c, fd = fc;
      c = b - g * (b - a), fc = f(c);
    } else {
      a = c, c = d, fc = fd;
      d = a + g * (b - a), fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), count));
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

/// Divergences of |s| versus phi in [0, 2pi) at fixed (r, theta, h): local
/// maxima of a coarse grid refined by golden-section search, kept when |s|
/// keeps growing as the refined point is approached.
inline std::vector<double> locate_divergences(double r, double theta, Complex h, int grid = 720) {
  const double two_pi = 2.0 * std::numbers::pi;
  auto abs_s = [&](double phi) {
    try {
      return std::abs(rot_squeeze_shift(r, theta, phi, h));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NearDivergence) return std::numeric_limits<double>::infinity();
      throw;
    }
  };
  std::vector<double> values(static_cast<std::size_t>(grid));
  for (int j = 0; j < grid; ++j) values[static_cast<std::size_t>(j)] = abs_s(two_pi * j / grid);
  std::vector<double> found;
  for (int j = 0; j < grid; ++j) {
    const double prev = values[static_cast<std::size_t>((j + grid - 1) % grid)];
    const double next = values[static_cast<std::size_t>((j + 1) % grid)];
    const double here = values[static_cast<std::size_t>(j)];
    if (!(here >= prev && here > next)) continue;
    const double a = two_pi * (j - 1) / grid, b = two_pi * (j + 1) / grid;
    double phi = detail::golden_max(abs_s, a, b, 1e-13);
    // A pole grows like |phi - phi*|^(-1/2): shrinking the offset 100-fold
    // multiplies |s| by about 10, while a smooth maximum stays flat.
    const double near = std::min(abs_s(phi - 1e-6), abs_s(phi + 1e-6));
    const double far = std::max(abs_s(phi - 1e-4), abs_s(phi + 1e-4));
    if (!(near > 3.0 * far)) continue;
    phi = std::fmod(phi + two_pi, two_pi);
    found.push_back(phi);
  }
  std::sort(found.begin(), found.end());
  return found;
}

struct SweepSpec {
  std::string study;
  double r = 1.0;
  double theta = 0.0;
  double r_min = 0.0;
  double r_max = 3.0;
  int points = 360;
  Complex h{1.0, 0.0};
};

struct SweepRow {
  std::vector<double> params;
  Complex s{0.0, 0.0};
  bool divergent = false;
};

struct SweepResult {
  std::vector<std::string> axes;
  std::vector<SweepRow> rows;
  /// Located divergence positions (rot-squeeze-phi only).
  std::vector<double> divergences;
};

inline const std::vector<std::string>& sweep_studies() {
  static const std::vector<std::string> names = {"squeeze-theta", "squeeze-r", "rot-squeeze-phi", "amp-boundary",
                                                 "rot-only"};
  return names;
}

inline Complex squeeze_shift_engine(double r, double theta, Complex h) {
  CMatrix b(1, 1);
  b(0, 0) = kI * r * std::exp(kI * theta);
  CVector hv(1);
  hv(0) = h;
  return forward_transform(HamiltonianRep(CMatrix::Zero(1, 1), b, hv)).pair.s()(0);
}

inline SweepResult run_sweep(const SweepSpec& spec) {
  if (spec.points < 2) fail(ErrorKind::Schema, "field 'points': need at least 2 grid points");
  const std::size_t n = static_cast<std::size_t>(spec.points);
  const double two_pi = 2.0 * std::numbers::pi;
  SweepResult out;
  out.rows.resize(n);
  auto linear = [&](std::size_t j) { return spec.r_min + (spec.r_max - spec.r_min) * j / (n - 1); };

  if (spec.study == "squeeze-theta") {
    out.axes = {"theta", "r"};
    detail::parallel_for(n, [&](std::size_t j) {
      const double th = two_pi * j / n;
      out.rows[j] = {{th, spec.r}, squeeze_shift_engine(spec.r, th, spec.h), false};
    });
  } else if (spec.study == "squeeze-r") {
    if (!(spec.r_max > spec.r_min)) fail(ErrorKind::Schema, "field 'r_max': must exceed r_min");
    out.axes = {"r", "theta"};
    detail::parallel_for(n, [&](std::size_t j) {
      const double r = linear(j);
      out.rows[j] = {{r, spec.theta}, squeeze_shift_engine(r, spec.theta, spec.h), false};
    });
  } else if (spec.study == "rot-squeeze-phi") {
    out.axes = {"phi", "r", "theta"};
    detail::parallel_for(n, [&](std::size_t j) {
      const double phi = two_pi * j / n;
      SweepRow row{{phi, spec.r, spec.theta}, {0.0, 0.0}, false};
      try {
        row.s = rot_squeeze_shift(spec.r, spec.theta, phi, spec.h);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NearDivergence) throw;
        row.divergent = true;
      }
      out.rows[j] = row;
    });
    // Grid points adjacent to a located divergence are flagged as well.
    out.divergences = locate_divergences(spec.r, spec.theta, spec.h);
    for (double phi : out.divergences) {
      const std::size_t below = static_cast<std::size_t>(std::floor(phi / two_pi * n)) % n;
      out.rows[below].divergent = true;
      out.rows[(below + 1) % n].divergent = true;
    }
  } else if (spec.study == "amp-boundary") {
    if (!(spec.r_max > spec.r_min)) fail(ErrorKind::Schema, "field 'r_max': must exceed r_min");
    out.axes = {"r", "theta"};
    detail::parallel_for(n, [&](std::size_t j) {
      const double r = linear(j);
      if (!(r > 0.0)) {
        // Every theta gives |s| = 1 at r = 0; report theta = 0.
        out.rows[j] = {{r, 0.0}, squeeze_shift_engine(0.0, 0.0, spec.h), false};
        return;
      }
      const double th = amplification_boundary(r);
      out.rows[j] = {{r, th}, squeeze_shift_engine(r, th, spec.h), false};
    });
  } else if (spec.study == "rot-only") {
    out.axes = {"phi"};
    detail::parallel_for(n, [&](std::size_t j) {
      const double phi = -std::numbers::pi + two_pi * j / n;
      CMatrix p(1, 1);
      p(0, 0) = phi;
      CVector hv(1);
      hv(0) = spec.h;
      out.rows[j] = {{phi}, rotation_closed_form(p, hv).pair.s()(0), false};
    });
  } else {
    fail(ErrorKind::Schema, "field 'study': unknown study '" + spec.study + "'");
  }
  for (const SweepRow& row : out.rows)
    if (!row.divergent && !(std::isfinite(row.s.real()) && std::isfinite(row.s.imag())))
      fail(ErrorKind::NonFinite, "sweep produced a non-finite value");
  return out;
}

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Header plus one row per grid point; divergence-flagged rows leave the
/// value columns empty.
inline void write_csv(const SweepResult& res, std::ostream& out) {
  for (const auto& a : res.axes) out << a << ',';
  out << "abs_s,re_s,im_s,flag\n";
  for (const SweepRow& row : res.rows) {
    for (double p : row.params) out << format_double(p) << ',';
    if (row.divergent) {
      out << ",,,div\n";
    } else {
      out << format_double(std::abs(row.s)) << ',' << format_double(row.s.real()) << ','
          << format_double(row.s.imag()) << ",\n";
    }
  }
}

}  // namespace sympleq
