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

#include "aggad/burgers/burgers.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "aggad/aggad.hpp"
#include "aggad/verify/pair_complex.hpp"

namespace aggad::burgers {

namespace {

using verify::PairComplex;

// --- field value types -----------------------------------------------------

template <class T>
struct FieldTraits;

template <>
struct FieldTraits<double> {
  static constexpr std::size_t kWidth = 1;
  static double make(double re, double) { return re; }
};
template <>
struct FieldTraits<std::complex<double>> {
  static constexpr std::size_t kWidth = 2;
  static std::complex<double> make(double re, double im) { return {re, im}; }
};
template <class Tape>
struct FieldTraits<ActiveReal<Tape>> {
  static constexpr std::size_t kWidth = 1;
  static ActiveReal<Tape> make(double re, double) { return ActiveReal<Tape>(re); }
  static void register_input(Tape& t, ActiveReal<Tape>& x, std::vector<Identifier>& ids) {
    t.register_input(x);
    ids.push_back(x.identifier());
  }
};
template <class Tape>
struct FieldTraits<ActiveComplex<Tape>> {
  static constexpr std::size_t kWidth = 2;
  static ActiveComplex<Tape> make(double re, double im) { return ActiveComplex<Tape>(re, im); }
  static void register_input(Tape& t, ActiveComplex<Tape>& x, std::vector<Identifier>& ids) {
    t.register_input(x);
    ids.push_back(x.component(0).identifier());
    ids.push_back(x.component(1).identifier());
  }
};
template <class Tape>
struct FieldTraits<PairComplex<ActiveReal<Tape>>> {
  static constexpr std::size_t kWidth = 2;
  using S = ActiveReal<Tape>;
  static PairComplex<S> make(double re, double im) { return {S(re), S(im)}; }
  static void register_input(Tape& t, PairComplex<S>& x, std::vector<Identifier>& ids) {
    t.register_input(x.re);
    t.register_input(x.im);
    ids.push_back(x.re.identifier());
    ids.push_back(x.im.identifier());
  }
};

// --- the solver, generic over the field type --------------------------------

struct Exact {
  double u;
  double v;
};

Exact exact(double x, double y, double t) {
  const double d = 1.0 - 2.0 * t * t;
  return {(x + y - 2.0 * x * t) / d, (x - y - 2.0 * y * t) / d};
}

/// Field storage: u and v, N x N, row-major with x along rows.
template <class T>
struct Fields {
  std::vector<T> u;
  std::vector<T> v;
};

template <class T>
Fields<T> initial_fields(const BurgersConfig& c, std::span<const double> inputs) {
  using Tr = FieldTraits<T>;
  const std::size_t n = static_cast<std::size_t>(c.grid) * c.grid;
  Fields<T> f;
  f.u.reserve(n);
  f.v.reserve(n);
  for (std::size_t p = 0; p < n; ++p) {
    const double* x = inputs.data() + p * Tr::kWidth;
    f.u.push_back(Tr::make(x[0], Tr::kWidth == 2 ? x[1] : 0.0));
  }
  for (std::size_t p = 0; p < n; ++p) {
    const double* x = inputs.data() + (n + p) * Tr::kWidth;
    f.v.push_back(Tr::make(x[0], Tr::kWidth == 2 ? x[1] : 0.0));
  }
  return f;
}

template <class T, class Real>
Real squared_magnitude_sum(const Fields<T>& f, int n) {
  using std::conj;
  using std::real;
  Real acc = 0.0;
  for (int j = 1; j < n - 1; ++j) {
    for (int i = 1; i < n - 1; ++i) {
      const std::size_t p = static_cast<std::size_t>(j) * n + i;
      const T& u = f.u[p];
      const T& v = f.v[p];
      if constexpr (FieldTraits<T>::kWidth == 2)
        acc = acc + real(u * conj(u)) + real(v * conj(v));
      else
        acc = acc + u * u + v * v;
    }
  }
  return acc;
}

/// Advances K explicit Euler steps in place and returns the output functional.
template <class T, class Real>
Real simulate(const BurgersConfig& c, Fields<T>& f) {
  using Tr = FieldTraits<T>;
  const int n = c.grid;
  const double dx = 1.0 / (n - 1);
  const double ca = c.dt / (2.0 * dx);
  const double cd = c.dt / (c.reynolds * dx * dx);
  const double shift = Tr::kWidth == 2 ? 1.0 : 0.0;

  Fields<T> next;
  next.u.resize(f.u.size());
  next.v.resize(f.v.size());
  for (int k = 0; k < c.iters; ++k) {
    for (int j = 1; j < n - 1; ++j) {
      for (int i = 1; i < n - 1; ++i) {
        const std::size_t p = static_cast<std::size_t>(j) * n + i;
        const T& u = f.u[p];
        const T& v = f.v[p];
        const T& ue = f.u[p + 1];
        const T& uw = f.u[p - 1];
        const T& un = f.u[p + n];
        const T& us = f.u[p - n];
        const T& ve = f.v[p + 1];
        const T& vw = f.v[p - 1];
        const T& vn = f.v[p + n];
        const T& vs = f.v[p - n];
        next.u[p] = u - ca * (u * (ue - uw) + v * (un - us)) + cd * (ue + uw + un + us - 4.0 * u);
        next.v[p] = v - ca * (u * (ve - vw) + v * (vn - vs)) + cd * (ve + vw + vn + vs - 4.0 * v);
      }
    }
    // Boundary values are passive: moving a fresh value in releases the
    // identifier without recording anything.
    const double t = (k + 1) * c.dt;
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        if (i != 0 && j != 0 && i != n - 1 && j != n - 1) continue;
        const std::size_t p = static_cast<std::size_t>(j) * n + i;
        const Exact e = exact(i * dx, j * dx, t);
        next.u[p] = Tr::make(e.u, shift);
        next.v[p] = Tr::make(e.v, shift);
      }
    }
    std::swap(f.u, next.u);
    std::swap(f.v, next.v);
  }
  return squared_magnitude_sum<T, Real>(f, n);
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <class Tape, class T>
BenchResult run_on_tape(const BurgersConfig& c, bool keep_gradient) {
  using Tr = FieldTraits<T>;
  using Real = ActiveReal<Tape>;
  const std::vector<double> inputs = initial_inputs(c);
  BenchResult result;
  result.config = c;
  for (int rep = 0; rep < c.reps; ++rep) {
    Tape tape;
    typename Tape::Scope scope(tape);
    std::vector<Identifier> ids;
    ids.reserve(inputs.size());

    const Clock::time_point record_start = Clock::now();
    Fields<T> f = initial_fields<T>(c, inputs);
    for (T& x : f.u) Tr::register_input(tape, x, ids);
    for (T& x : f.v) Tr::register_input(tape, x, ids);
    Real y = simulate<T, Real>(c, f);
    result.record_seconds += seconds_since(record_start);

    if (!std::isfinite(y.value())) {
      std::ostringstream msg;
      msg << "non-finite output " << y.value() << " for grid=" << c.grid << " iters=" << c.iters
          << " reynolds=" << c.reynolds << " dt=" << c.dt << " mode=" << to_string(c.mode);
      throw std::runtime_error(msg.str());
    }

    const Clock::time_point reverse_start = Clock::now();
    tape.gradient(y.identifier()) = 1.0;
    tape.evaluate();
    result.reverse_seconds += seconds_since(reverse_start);

    result.value_checksum = y.value();
    result.grad_checksum = 0.0;
    result.gradient.clear();
    for (Identifier id : ids) {
      const double g = tape.gradient(id);
      result.grad_checksum += g;
      if (keep_gradient) result.gradient.push_back(g);
    }
    result.statistics = tape.statistics();
  }
  result.record_seconds /= c.reps;
  result.reverse_seconds /= c.reps;
  return result;
}

template <class Tape>
BenchResult run_mode(const BurgersConfig& c, bool keep_gradient) {
  switch (c.mode) {
    case Mode::kReal: return run_on_tape<Tape, ActiveReal<Tape>>(c, keep_gradient);
    case Mode::kComplexUnhandled: return run_on_tape<Tape, PairComplex<ActiveReal<Tape>>>(c, keep_gradient);
    case Mode::kComplexHandled: return run_on_tape<Tape, ActiveComplex<Tape>>(c, keep_gradient);
  }
  throw std::invalid_argument("unknown mode");
}

}  // namespace

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::kReal: return "real";
    case Mode::kComplexUnhandled: return "complex-unhandled";
    case Mode::kComplexHandled: return "complex-handled";
  }
  return "?";
}

std::string to_string(TapeChoice tape) {
  switch (tape) {
    case TapeChoice::kJacobianLinear: return "jacobian-linear";
    case TapeChoice::kJacobianReuse: return "jacobian-reuse";
    case TapeChoice::kPrimalLinear: return "primal-linear";
    case TapeChoice::kPrimalReuse: return "primal-reuse";
  }
  return "?";
}

std::optional<Mode> parse_mode(const std::string& text) {
  for (Mode m : kModes)
    if (to_string(m) == text) return m;
  return std::nullopt;
}

std::optional<TapeChoice> parse_tape(const std::string& text) {
  for (TapeChoice t : kTapes)
    if (to_string(t) == text) return t;
  return std::nullopt;
}

void validate(const BurgersConfig& c) {
  if (c.grid < 3) throw std::invalid_argument("grid must be at least 3, got " + std::to_string(c.grid));
  if (c.iters < 0) throw std::invalid_argument("iters must be non-negative, got " + std::to_string(c.iters));
  if (!(c.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(c.reynolds > 0.0)) throw std::invalid_argument("reynolds must be positive");
  if (c.reps < 1) throw std::invalid_argument("reps must be at least 1, got " + std::to_string(c.reps));
  const double t = c.dt * c.iters;
  if (1.0 - 2.0 * t * t < 0.5)
    throw std::invalid_argument("dt * iters = " + std::to_string(t) +
                                " brings 1 - 2t^2 of the exact solution below 0.5");
}

std::vector<double> initial_inputs(const BurgersConfig& c) {
  const int n = c.grid;
  const double dx = 1.0 / (n - 1);
  const bool complex = c.mode != Mode::kReal;
  std::vector<double> u;
  std::vector<double> v;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Exact e = exact(i * dx, j * dx, 0.0);
      u.push_back(e.u);
      v.push_back(e.v);
      if (complex) {
        u.push_back(1.0);
        v.push_back(1.0);
      }
    }
  }
  u.insert(u.end(), v.begin(), v.end());
  return u;
}

double passive_norm(const BurgersConfig& c, std::span<const double> inputs) {
  validate(c);
  if (c.mode == Mode::kReal) {
    Fields<double> f = initial_fields<double>(c, inputs);
    return simulate<double, double>(c, f);
  }
  Fields<std::complex<double>> f = initial_fields<std::complex<double>>(c, inputs);
  return simulate<std::complex<double>, double>(c, f);
}

BenchResult solve_burgers(const BurgersConfig& c, bool keep_gradient) {
  validate(c);
  switch (c.tape) {
    case TapeChoice::kJacobianLinear: return run_mode<JacobianLinearTape>(c, keep_gradient);
    case TapeChoice::kJacobianReuse: return run_mode<JacobianReuseTape>(c, keep_gradient);
    case TapeChoice::kPrimalLinear: return run_mode<PrimalLinearTape>(c, keep_gradient);
    case TapeChoice::kPrimalReuse: return run_mode<PrimalReuseTape>(c, keep_gradient);
  }
  throw std::invalid_argument("unknown tape");
}

std::vector<BurgersConfig> matrix_configs(const BurgersConfig& base) {
  std::vector<BurgersConfig> out;
  for (TapeChoice t : kTapes) {
    for (Mode m : kModes) {
      BurgersConfig c = base;
      c.mode = m;
      c.tape = t;
      out.push_back(c);
    }
  }
  return out;
}

MatrixReport run_matrix(const std::vector<BurgersConfig>& configs) {
  MatrixReport report;
  for (const BurgersConfig& c : configs) {
    MatrixRow row;
    row.result.config = c;
    try {
      row.result = solve_burgers(c);
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

bool MatrixReport::ok() const {
  for (const MatrixRow& r : rows)
    if (!r.ok) return false;
  return true;
}

nlohmann::json MatrixReport::derived() const {
  nlohmann::json out = nlohmann::json::object();
  for (TapeChoice t : kTapes) {
    const BenchResult* by_mode[3] = {nullptr, nullptr, nullptr};
    for (const MatrixRow& r : rows)
      if (r.ok && r.result.config.tape == t) by_mode[static_cast<int>(r.result.config.mode)] = &r.result;
    nlohmann::json entry = nlohmann::json::object();
    const auto total = [](const BenchResult* r) { return static_cast<double>(r->statistics.total_bytes()); };
    const BenchResult* real = by_mode[static_cast<int>(Mode::kReal)];
    const BenchResult* unhandled = by_mode[static_cast<int>(Mode::kComplexUnhandled)];
    const BenchResult* handled = by_mode[static_cast<int>(Mode::kComplexHandled)];
    if (real && handled) entry["memory_factor_handled_over_real"] = total(handled) / total(real);
    if (unhandled && handled) {
      entry["memory_ratio_handled_over_unhandled"] = total(handled) / total(unhandled);
      entry["memory_reduction_handled_vs_unhandled"] = 1.0 - total(handled) / total(unhandled);
    }
    if (!entry.empty()) out[to_string(t)] = std::move(entry);
  }
  return out;
}

std::string csv_header() {
  return "mode,tape,grid,iters,record_s,reverse_s,stmts_bytes,ids_bytes,jac_or_payload_bytes,adjoint_bytes,"
         "primal_bytes,total_bytes,value_checksum,grad_checksum";
}

std::string csv_row(const BenchResult& r) {
  const TapeStatistics& s = r.statistics;
  const bool jacobian = s.kind == TapeKind::kJacobian;
  std::ostringstream out;
  out.precision(17);
  out << to_string(r.config.mode) << ',' << to_string(r.config.tape) << ',' << r.config.grid << ','
      << r.config.iters << ',' << r.record_seconds << ',' << r.reverse_seconds << ',' << s.statement_bytes << ','
      << (jacobian ? s.identifier_bytes : 0) << ',' << (jacobian ? s.jacobian_bytes : s.payload_bytes) << ','
      << s.adjoint_bytes << ',' << s.primal_vector_bytes << ',' << s.total_bytes() << ',' << r.value_checksum << ','
      << r.grad_checksum;
  return out.str();
}

std::string MatrixReport::to_csv() const {
  std::string out = csv_header() + "\n";
  for (const MatrixRow& r : rows)
    if (r.ok) out += csv_row(r.result) + "\n";
  return out;
}

nlohmann::json MatrixReport::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const MatrixRow& r : rows) {
    nlohmann::json j;
    j["mode"] = to_string(r.result.config.mode);
    j["tape"] = to_string(r.result.config.tape);
    j["grid"] = r.result.config.grid;
    j["iters"] = r.result.config.iters;
    j["ok"] = r.ok;
    if (!r.ok) {
      j["error"] = r.error;
    } else {
      j["record_s"] = r.result.record_seconds;
      j["reverse_s"] = r.result.reverse_seconds;
      j["memory"] = aggad::to_json(r.result.statistics);
      j["value_checksum"] = r.result.value_checksum;
      j["grad_checksum"] = r.result.grad_checksum;
    }
    list.push_back(std::move(j));
  }
  return {{"rows", std::move(list)}, {"derived", derived()}};
}

}  // namespace aggad::burgers
