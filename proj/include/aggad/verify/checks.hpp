// Copyright 2026 The aggad Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace aggad::verify {

struct FDConfig {
  /// h = step_scale * max(max_i |x_i|, 1).
  double step_scale = 6e-6;
  double tolerance = 1e-6;
};

enum class CheckKind { kFiniteDifference, kDotProduct, kDecomposed, kProjection };

const char* to_string(CheckKind kind);

enum class Outcome { kPass, kFail, kInconclusive };

struct CheckEntry {
  std::string op;
  CheckKind kind = CheckKind::kFiniteDifference;
  std::vector<double> point;
  double analytic = 0.0;
  double oracle = 0.0;
  double error = 0.0;
  double tolerance = 0.0;
  Outcome outcome = Outcome::kPass;
};

struct CheckReport {
  std::vector<CheckEntry> entries;

  std::size_t count(Outcome o) const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [&](const CheckEntry& e) { return e.outcome == o; }));
  }
  bool passed() const { return count(Outcome::kFail) == 0; }
  /// Number of distinct points checked for `op` with checks of `kind`.
  std::size_t points(const std::string& op, CheckKind kind) const;

  nlohmann::json to_json() const;
  /// One summary line per operation, followed by every failing entry.
  std::string to_text() const;
};

/// Relative error with the max(|a|, |o|, 1e-30) denominator.
inline double relative_error(double analytic, double oracle) {
  return std::abs(analytic - oracle) / std::max({std::abs(analytic), std::abs(oracle), 1e-30});
}

/// Vector form: max-norm of the difference over the larger max-norm.
inline double relative_error(std::span<const double> analytic, std::span<const double> oracle) {
  double diff = 0.0;
  double a = 0.0;
  double o = 0.0;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    diff = std::max(diff, std::abs(analytic[i] - oracle[i]));
    a = std::max(a, std::abs(analytic[i]));
    o = std::max(o, std::abs(oracle[i]));
  }
  return diff / std::max({a, o, 1e-30});
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Central difference (f(x + h dx) - f(x - h dx)) / (2h) of a vector valued
/// function. Returns an empty vector if either evaluation is not finite.
template <class F>
std::vector<double> fd_directional(F&& f, std::span<const double> x, std::span<const double> dx,
                                   const FDConfig& config = {}) {
  double scale = 1.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  const double h = config.step_scale * scale;
  std::vector<double> xp(x.begin(), x.end());
  std::vector<double> xm(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    xp[i] += h * dx[i];
    xm[i] -= h * dx[i];
  }
  const std::vector<double> fp = f(std::span<const double>(xp));
  const std::vector<double> fm = f(std::span<const double>(xm));
  std::vector<double> out(fp.size());
  for (std::size_t i = 0; i < fp.size(); ++i) {
    if (!std::isfinite(fp[i]) || !std::isfinite(fm[i])) return {};
    out[i] = (fp[i] - fm[i]) / (2.0 * h);
  }
  return out;
}

/// Tangent/adjoint duality: |<ybar, ydot> - <xbar, xdot>| <= tol * max(|<ybar, ydot>|, 1).
struct DotProductResult {
  double forward = 0.0;
  double reverse = 0.0;
  double error = 0.0;
  bool pass = false;
};

inline DotProductResult dot_product_test(std::span<const double> xdot, std::span<const double> ydot,
                                         std::span<const double> xbar, std::span<const double> ybar,
                                         double tolerance = 1e-12) {
  DotProductResult r;
  r.forward = dot(ybar, ydot);
  r.reverse = dot(xbar, xdot);
  r.error = std::abs(r.forward - r.reverse) / std::max(std::abs(r.forward), 1.0);
  r.pass = r.error <= tolerance;
  return r;
}

}  // namespace aggad::verify
