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

// Burgers' equation benchmark: records the solve on one or all tape
// configurations and reports memory breakdowns and timings.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "aggad/burgers/burgers.hpp"
#include "aggad/verify/checks.hpp"

namespace {

using namespace aggad::burgers;

constexpr int kConfigError = 2;
constexpr int kRunFailed = 1;

/// FD gate on a small instance: gradient of the output with respect to a few
/// interior initial values of u and v, on every tape.
bool seed_check(std::ostream& log) {
  BurgersConfig c;
  c.grid = 9;
  c.iters = 2;
  c.reps = 1;
  const std::vector<double> x = initial_inputs(c);
  const std::size_t g = static_cast<std::size_t>(c.grid);
  const std::size_t n = g * g;
  const std::size_t probes[] = {g + 1, 4 * g + 4, n + 3 * g + 5, n + 7 * g + 7};
  bool ok = true;
  for (TapeChoice t : kTapes) {
    c.tape = t;
    const BenchResult r = solve_burgers(c, true);
    for (std::size_t k : probes) {
      std::vector<double> dx(x.size(), 0.0);
      dx[k] = 1.0;
      const auto fd = aggad::verify::fd_directional(
          [&](std::span<const double> p) { return std::vector<double>{passive_norm(c, p)}; }, x, dx);
      const double err = aggad::verify::relative_error(r.gradient[k], fd.at(0));
      if (err > 1e-5) {
        ok = false;
        log << "seed check failed: " << to_string(t) << " input " << k << " adjoint " << r.gradient[k] << " fd "
            << fd[0] << '\n';
      }
    }
  }
  log << "seed check " << (ok ? "passed" : "FAILED") << '\n';
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupled Burgers' equation AD benchmark"};
  BurgersConfig config;
  std::string mode = to_string(config.mode);
  std::string tape = to_string(config.tape);
  std::string output = "csv";
  std::string out_file;
  bool matrix = false;
  bool check = false;

  std::vector<std::string> mode_names;
  for (Mode m : kModes) mode_names.push_back(to_string(m));
  std::vector<std::string> tape_names;
  for (TapeChoice t : kTapes) tape_names.push_back(to_string(t));

  app.add_option("--grid", config.grid, "points per direction")->check(CLI::Range(3, 100000));
  app.add_option("--iters", config.iters, "explicit Euler steps")->check(CLI::Range(1, 1000000));
  app.add_option("--reynolds", config.reynolds, "Reynolds-like parameter R")->check(CLI::PositiveNumber);
  app.add_option("--dt", config.dt, "time step")->check(CLI::PositiveNumber);
  app.add_option("--mode", mode, "value type")->check(CLI::IsMember(mode_names));
  app.add_option("--tape", tape, "tape and index manager")->check(CLI::IsMember(tape_names));
  app.add_option("--reps", config.reps, "repetitions averaged in the timings")->check(CLI::Range(1, 10000));
  app.add_flag("--matrix", matrix, "run every mode and tape combination");
  app.add_option("--output", output, "report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out-file", out_file, "write the report here instead of stdout");
  app.add_flag("--seed-check", check, "check gradients against finite differences on a 9x9 grid first");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  config.mode = *parse_mode(mode);
  config.tape = *parse_tape(tape);
  try {
    validate(config);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  if (check && !seed_check(std::cerr)) return kRunFailed;

  const std::vector<BurgersConfig> configs = matrix ? matrix_configs(config) : std::vector<BurgersConfig>{config};
  const MatrixReport report = run_matrix(configs);

  std::ofstream file;
  if (!out_file.empty()) {
    file.open(out_file);
    if (!file) {
      std::cerr << "cannot open " << out_file << '\n';
      return kConfigError;
    }
  }
  std::ostream& out = out_file.empty() ? std::cout : file;

  if (output == "json") {
    out << report.to_json().dump(2) << '\n';
  } else {
    out << report.to_csv();
    const auto derived = report.derived();
    if (!derived.empty()) std::cerr << "derived: " << derived.dump() << '\n';
  }
  for (const MatrixRow& row : report.rows)
    if (!row.ok)
      std::cerr << "row " << to_string(row.result.config.mode) << '/' << to_string(row.result.config.tape)
                << " failed: " << row.error << '\n';
  return report.ok() ? 0 : kRunFailed;
}
