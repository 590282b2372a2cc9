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

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "aggad/burgers/burgers.hpp"
#include "aggad/verify/checks.hpp"

using namespace aggad::burgers;

namespace {

BurgersConfig small(Mode mode, TapeChoice tape, int grid = 9, int iters = 2) {
  BurgersConfig c;
  c.grid = grid;
  c.iters = iters;
  c.mode = mode;
  c.tape = tape;
  c.reps = 1;
  return c;
}

bool interior(int g, std::size_t point) {
  const int i = static_cast<int>(point) % g;
  const int j = static_cast<int>(point) / g;
  return i > 0 && j > 0 && i < g - 1 && j < g - 1;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(BURGERS_BENCH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Burgers, GradientMatchesFiniteDifferences) {
  for (Mode m : kModes) {
    for (TapeChoice t : kTapes) {
      SCOPED_TRACE(to_string(m) + "/" + to_string(t));
      const BurgersConfig c = small(m, t);
      const BenchResult r = solve_burgers(c, true);
      const std::vector<double> x = initial_inputs(c);
      ASSERT_EQ(r.gradient.size(), x.size());
      EXPECT_DOUBLE_EQ(r.value_checksum, passive_norm(c, x));
      const std::size_t g = static_cast<std::size_t>(c.grid);
      const std::size_t per_point = m == Mode::kReal ? 1 : 2;
      std::vector<std::size_t> probes;
      for (std::size_t field = 0; field < 2; ++field)
        for (std::size_t point : {g + 1, 4 * g + 4, 6 * g + 3, 2 * g + 7})
          for (std::size_t comp = 0; comp < per_point; ++comp)
            probes.push_back((field * g * g + point) * per_point + comp);
      for (std::size_t k : probes) {
        std::vector<double> dx(x.size(), 0.0);
        dx[k] = 1.0;
        const auto fd = aggad::verify::fd_directional(
            [&](std::span<const double> p) { return std::vector<double>{passive_norm(c, p)}; }, x, dx);
        ASSERT_FALSE(fd.empty());
        EXPECT_LE(aggad::verify::relative_error(r.gradient[k], fd[0]), 1e-5) << "input " << k;
      }
    }
  }
}

TEST(Burgers, HandledEqualsUnhandled) {
  for (TapeChoice t : kTapes) {
    const BenchResult h = solve_burgers(small(Mode::kComplexHandled, t, 15, 4), true);
    const BenchResult u = solve_burgers(small(Mode::kComplexUnhandled, t, 15, 4), true);
    EXPECT_LE(aggad::verify::relative_error(h.value_checksum, u.value_checksum), 1e-10);
    EXPECT_LE(aggad::verify::relative_error(h.gradient, u.gradient), 1e-10);
  }
}

TEST(Burgers, TapeIndependence) {
  for (Mode m : kModes) {
    const BenchResult ref = solve_burgers(small(m, TapeChoice::kJacobianLinear, 15, 4), true);
    for (TapeChoice t : kTapes) {
      const BenchResult r = solve_burgers(small(m, t, 15, 4), true);
      EXPECT_LE(aggad::verify::relative_error(r.value_checksum, ref.value_checksum), 1e-12);
      EXPECT_LE(aggad::verify::relative_error(r.gradient, ref.gradient), 1e-12);
    }
  }
}

// With no time steps the output is the squared norm of the interior inputs.
TEST(Burgers, ZeroStepsGiveTwiceTheInput) {
  for (Mode m : kModes) {
    const BurgersConfig c = small(m, TapeChoice::kPrimalReuse, 7, 0);
    const BenchResult r = solve_burgers(c, true);
    const std::vector<double> x = initial_inputs(c);
    const std::size_t per_point = m == Mode::kReal ? 1 : 2;
    const std::size_t points = static_cast<std::size_t>(c.grid * c.grid);
    for (std::size_t k = 0; k < x.size(); ++k) {
      const std::size_t point = (k / per_point) % points;
      const double expected = interior(c.grid, point) ? 2.0 * x[k] : 0.0;
      EXPECT_EQ(r.gradient[k], expected) << to_string(m) << " input " << k;
    }
  }
}

TEST(Burgers, JacobianRowsAreTwicePrimalStatements) {
  const BenchResult j = solve_burgers(small(Mode::kComplexHandled, TapeChoice::kJacobianLinear, 15, 3));
  const BenchResult p = solve_burgers(small(Mode::kComplexHandled, TapeChoice::kPrimalLinear, 15, 3));
  EXPECT_GT(p.statistics.aggregate_statements, 0u);
  EXPECT_EQ(j.statistics.aggregate_statements, 2 * p.statistics.aggregate_statements);
}

TEST(Burgers, TapeBytesScaleWithGridArea) {
  for (Mode m : kModes) {
    for (TapeChoice t : kTapes) {
      const BenchResult a = solve_burgers(small(m, t, 31, 4));
      const BenchResult b = solve_burgers(small(m, t, 61, 4));
      const double ratio = static_cast<double>(b.statistics.tape_bytes()) / a.statistics.tape_bytes();
      EXPECT_NEAR(ratio, 4.0, 0.4) << to_string(m) << "/" << to_string(t);
    }
  }
}

TEST(Burgers, ValidateRejectsBadConfigs) {
  BurgersConfig c;
  c.grid = 2;
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = BurgersConfig{};
  c.dt = 0.1;
  c.iters = 16;
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = BurgersConfig{};
  c.reps = 0;
  EXPECT_THROW(validate(c), std::invalid_argument);
  EXPECT_NO_THROW(validate(BurgersConfig{}));
}

TEST(Burgers, NamesRoundTrip) {
  for (Mode m : kModes) EXPECT_EQ(parse_mode(to_string(m)), m);
  for (TapeChoice t : kTapes) EXPECT_EQ(parse_tape(to_string(t)), t);
  EXPECT_FALSE(parse_mode("quaternion").has_value());
}

TEST(Burgers, MatrixReportHasEveryRow) {
  BurgersConfig base = small(Mode::kReal, TapeChoice::kJacobianLinear, 9, 2);
  const MatrixReport report = run_matrix(matrix_configs(base));
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.rows.size(), 12u);
  const std::string csv = report.to_csv();
  EXPECT_EQ(csv.rfind(csv_header(), 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 13);
  EXPECT_TRUE(report.derived().contains("primal-reuse"));
  EXPECT_EQ(report.to_json().at("rows").size(), 12u);
}

TEST(BurgersCli, ExitCodes) {
  EXPECT_EQ(run_cli("--grid 9 --iters 2 --reps 1"), 0);
  EXPECT_EQ(run_cli("--grid 9 --iters 2 --reps 1 --matrix --output json"), 0);
  EXPECT_EQ(run_cli("--grid 9 --iters 2 --reps 1 --seed-check"), 0);
  EXPECT_EQ(run_cli("--grid 2"), 2);
  EXPECT_EQ(run_cli("--iters 0"), 2);
  EXPECT_EQ(run_cli("--dt 0.1"), 2);
  EXPECT_EQ(run_cli("--mode quaternion"), 2);
  EXPECT_EQ(run_cli("--bogus"), 2);
}
