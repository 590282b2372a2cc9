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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "aggad/statistics.hpp"

namespace aggad::burgers {

enum class Mode { kReal, kComplexUnhandled, kComplexHandled };
enum class TapeChoice { kJacobianLinear, kJacobianReuse, kPrimalLinear, kPrimalReuse };

inline constexpr Mode kModes[] = {Mode::kReal, Mode::kComplexUnhandled, Mode::kComplexHandled};
inline constexpr TapeChoice kTapes[] = {TapeChoice::kJacobianLinear, TapeChoice::kJacobianReuse,
                                        TapeChoice::kPrimalLinear, TapeChoice::kPrimalReuse};

std::string to_string(Mode mode);
std::string to_string(TapeChoice tape);
std::optional<Mode> parse_mode(const std::string& text);
std::optional<TapeChoice> parse_tape(const std::string& text);

/// Coupled Burgers' equation on [0,1]^2, explicit Euler in time and central
/// differences in space:
///   u_t + u u_x + v u_y = (u_xx + u_yy) / R, and likewise for v.
/// Initial and boundary values come from the exact solution
///   u = (x + y - 2xt) / (1 - 2t^2),  v = (x - y - 2yt) / (1 - 2t^2),
/// shifted by i in the complex modes.
struct BurgersConfig {
  int grid = 61;
  int iters = 16;
  double reynolds = 100.0;
  double dt = 1e-4;
  Mode mode = Mode::kReal;
  TapeChoice tape = TapeChoice::kJacobianLinear;
  int reps = 5;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const BurgersConfig& config);

struct BenchResult {
  BurgersConfig config;
  double record_seconds = 0.0;   // mean over repetitions
  double reverse_seconds = 0.0;  // mean over repetitions
  TapeStatistics statistics;
  /// Output functional: sum over interior points of Re(u conj u + v conj v).
  double value_checksum = 0.0;
  /// Sum of all input adjoints.
  double grad_checksum = 0.0;
  /// Input adjoints when requested: u then v, row-major, (re, im) per point
  /// in the complex modes.
  std::vector<double> gradient;
};

/// Records the solve on the configured tape, seeds the output with 1 and
/// reverses. Throws std::runtime_error if the functional is not finite.
BenchResult solve_burgers(const BurgersConfig& config, bool keep_gradient = false);

/// Initial field in the input layout of BenchResult::gradient.
std::vector<double> initial_inputs(const BurgersConfig& config);

/// Output functional without AD, for a given initial field (FD oracle).
double passive_norm(const BurgersConfig& config, std::span<const double> inputs);

struct MatrixRow {
  BenchResult result;
  bool ok = true;
  std::string error;
};

struct MatrixReport {
  std::vector<MatrixRow> rows;
  bool ok() const;
  /// Memory factor complex-handled / real per tape, and handled / unhandled
  /// per tape, from the rows that are present.
  nlohmann::json derived() const;
  std::string to_csv() const;
  nlohmann::json to_json() const;
};

/// Every mode x tape combination for the given base configuration.
std::vector<BurgersConfig> matrix_configs(const BurgersConfig& base);

/// Runs each configuration; failures are reported per row.
MatrixReport run_matrix(const std::vector<BurgersConfig>& configs);

std::string csv_header();
std::string csv_row(const BenchResult& result);

}  // namespace aggad::burgers
