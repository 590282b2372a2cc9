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

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "aggad/aggad.hpp"
#include "aggad/verify/forward_tape.hpp"

namespace aggad::verify {

/// Straight-line programs over a pool of real and a pool of complex
/// variables. Every statement is one fused assignment drawn from a fixed
/// menu; the menu keeps values bounded so programs of any length stay finite.
struct Program {
  enum Op : std::uint8_t {
    // real targets
    kRealRational,   // r = a b / (1 + a^2 b^2)
    kRealSin,        // r = sin(a) + b / 2
    kRealAbsImag,    // r = |z| / 2 + Im(w) / 4
    kRealNorm,       // r = |z|^2 / (1 + |z|^2) - b / 2
    kRealAtan2,      // r = atan2(a, 1 + b^2)
    kRealCopy,       // r = a
    kRealScale,      // r *= tanh(a)
    kRealArg,        // r = 0.3 arg(z)
    kRealOfProduct,  // r = Re(z w) / 4
    kRealLiteral,    // r = 0.7
    // complex targets
    kComplexRational,  // c = z w / (1 + |z|^2 |w|^2)
    kComplexSin,       // c = 0.2 sin(z) + w a / (1 + a^2)
    kComplexScale,     // c *= z / (1 + |z|)
    kComplexShrink,    // c /= 1 + |z|^2
    kComplexAccumulate,// c += 0.1 z
    kComplexConstruct, // c = (a, b)
    kComplexPolar,     // c = polar(1 / (1 + a^2), b)
    kComplexCopy,      // c = z
    kComplexExp,       // c = exp(z / 2) / 2
    kComplexConj,      // c = conj(z) a / (1 + a^2) + w / 2
    kOpCount
  };

  struct Instruction {
    Op op;
    std::uint16_t target;
    std::uint16_t a;
    std::uint16_t b;
    std::uint16_t c;
  };

  std::size_t reals = 0;
  std::size_t complexes = 0;
  /// Initial values: reals first, then (re, im) per complex.
  std::vector<double> inputs;
  std::vector<Instruction> code;

  std::size_t input_size() const { return reals + 2 * complexes; }
  std::size_t output_size() const { return input_size(); }
};

/// Draws a program with `length` statements over random pools.
inline Program random_program(std::mt19937_64& rng, std::size_t length) {
  Program p;
  p.reals = std::uniform_int_distribution<std::size_t>(3, 7)(rng);
  p.complexes = std::uniform_int_distribution<std::size_t>(2, 5)(rng);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  for (std::size_t i = 0; i < p.input_size(); ++i) p.inputs.push_back(value(rng));
  std::uniform_int_distribution<int> op(0, Program::kOpCount - 1);
  for (std::size_t s = 0; s < length; ++s) {
    Program::Instruction in{};
    in.op = static_cast<Program::Op>(op(rng));
    const std::size_t target_pool = in.op < Program::kComplexRational ? p.reals : p.complexes;
    in.target = static_cast<std::uint16_t>(std::uniform_int_distribution<std::size_t>(0, target_pool - 1)(rng));
    // Operand slots are reduced modulo the pool they index at execution.
    in.a = static_cast<std::uint16_t>(rng() % 64);
    in.b = static_cast<std::uint16_t>(rng() % 64);
    in.c = static_cast<std::uint16_t>(rng() % 64);
    p.code.push_back(in);
  }
  return p;
}

inline std::complex<double> make_complex(double re, double im) { return {re, im}; }

/// Runs the program on pools of the given types; works for passive numbers
/// and for every active type.
template <class Real, class Complex>
void execute(const Program& p, std::vector<Real>& r, std::vector<Complex>& c) {
  using std::abs;
  using std::arg;
  using std::atan2;
  using std::conj;
  using std::exp;
  using std::norm;
  using std::polar;
  using std::real;
  using std::sin;
  using std::tanh;
  const std::size_t nr = r.size();
  const std::size_t nc = c.size();
  for (const Program::Instruction& in : p.code) {
    Real& rt = r[in.target % nr];
    Complex& ct = c[in.target % nc];
    const Real& ra = r[in.a % nr];
    const Real& rb = r[in.b % nr];
    const Real& rc = r[in.c % nr];
    const Complex& za = c[in.a % nc];
    const Complex& zb = c[in.b % nc];
    switch (in.op) {
      case Program::kRealRational: rt = ra * rb / (1.0 + ra * ra * rb * rb); break;
      case Program::kRealSin: rt = sin(ra) + rb * 0.5; break;
      case Program::kRealAbsImag: rt = abs(za) * 0.5 + zb.imag() * 0.25; break;
      case Program::kRealNorm: rt = norm(za) / (1.0 + norm(za)) - rb * 0.5; break;
      case Program::kRealAtan2: rt = atan2(ra, 1.0 + rb * rb); break;
      case Program::kRealCopy: rt = ra; break;
      case Program::kRealScale: rt *= tanh(ra); break;
      case Program::kRealArg: rt = 0.3 * arg(za); break;
      case Program::kRealOfProduct: rt = real(za * zb) * 0.25; break;
      case Program::kRealLiteral: rt = 0.7; break;
      case Program::kComplexRational: ct = za * zb / (1.0 + norm(za) * norm(zb)); break;
      case Program::kComplexSin: ct = 0.2 * sin(za) + zb * rc / (1.0 + rc * rc); break;
      case Program::kComplexScale: ct *= za / (1.0 + abs(za)); break;
      case Program::kComplexShrink: ct /= 1.0 + norm(za); break;
      case Program::kComplexAccumulate: ct += 0.1 * za; break;
      case Program::kComplexConstruct: ct = make_complex(ra, rb); break;
      case Program::kComplexPolar: ct = polar(1.0 / (1.0 + ra * ra), rb); break;
      case Program::kComplexCopy: ct = za; break;
      case Program::kComplexExp: ct = exp(za * 0.5) * 0.5; break;
      case Program::kComplexConj: ct = conj(za) * rc / (1.0 + rc * rc) + zb * 0.5; break;
      case Program::kOpCount: break;
    }
  }
}

/// Final pool values, reals first, in the same layout as the inputs.
template <class Real, class Complex>
std::vector<double> flatten_values(const std::vector<Real>& r, const std::vector<Complex>& c) {
  std::vector<double> out;
  for (const Real& v : r) out.push_back(primal_value(v));
  for (const Complex& z : c) {
    const std::complex<double> v = primal_value(z);
    out.push_back(v.real());
    out.push_back(v.imag());
  }
  return out;
}

inline std::vector<double> run_passive(const Program& p, std::span<const double> x) {
  std::vector<double> r(x.begin(), x.begin() + p.reals);
  std::vector<std::complex<double>> c;
  for (std::size_t i = 0; i < p.complexes; ++i) c.emplace_back(x[p.reals + 2 * i], x[p.reals + 2 * i + 1]);
  execute(p, r, c);
  return flatten_values(r, c);
}

struct ProgramRun {
  std::vector<double> outputs;
  /// Input adjoints (reverse) or output tangents (forward).
  std::vector<double> derivative;
  TapeStatistics statistics;
};

/// Records the program on `tape` (which should be empty), seeds the final
/// pool with `ybar` and reverses. Works for every tape type.
template <class Tape>
ProgramRun run_reverse(Tape& tape, const Program& p, std::span<const double> ybar) {
  using Real = ActiveReal<Tape>;
  using Complex = ActiveComplex<Tape>;
  typename Tape::Scope scope(tape);
  std::vector<Real> r(p.reals);
  std::vector<Complex> c(p.complexes);
  std::vector<Identifier> in_ids;
  for (std::size_t i = 0; i < p.reals; ++i) {
    r[i] = p.inputs[i];
    tape.register_input(r[i]);
    in_ids.push_back(r[i].identifier());
  }
  for (std::size_t i = 0; i < p.complexes; ++i) {
    c[i] = std::complex<double>(p.inputs[p.reals + 2 * i], p.inputs[p.reals + 2 * i + 1]);
    tape.register_input(c[i]);
    in_ids.push_back(c[i].component(0).identifier());
    in_ids.push_back(c[i].component(1).identifier());
  }
  execute(p, r, c);

  ProgramRun run;
  run.outputs = flatten_values(r, c);
  std::size_t k = 0;
  for (const Real& v : r) tape.gradient(v.identifier()) += ybar[k++];
  for (const Complex& z : c)
    for (std::size_t i = 0; i < 2; ++i) tape.gradient(z.component(i).identifier()) += ybar[k++];
  // Passive outputs do not take part in the pairing.
  tape.gradient(kPassiveIdentifier) = 0.0;
  tape.evaluate();
  for (Identifier id : in_ids) run.derivative.push_back(tape.gradient(id));
  run.statistics = tape.statistics();
  return run;
}

/// Output tangents for input tangents `xdot`.
inline ProgramRun run_forward(const Program& p, std::span<const double> xdot) {
  using Real = ForwardTape::Real;
  using Complex = ForwardTape::Complex;
  ForwardTape tape;
  ForwardTape::Scope scope(tape);
  std::vector<Real> r(p.reals);
  std::vector<Complex> c(p.complexes);
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.reals; ++i) {
    r[i] = p.inputs[i];
    tape.register_input(r[i]);
    tape.tangent(r[i].identifier()) = xdot[k++];
  }
  for (std::size_t i = 0; i < p.complexes; ++i) {
    c[i] = std::complex<double>(p.inputs[p.reals + 2 * i], p.inputs[p.reals + 2 * i + 1]);
    tape.register_input(c[i]);
    for (std::size_t j = 0; j < 2; ++j) tape.tangent(c[i].component(j).identifier()) = xdot[k++];
  }
  execute(p, r, c);
  ProgramRun run;
  run.outputs = flatten_values(r, c);
  for (const Real& v : r) run.derivative.push_back(static_cast<const ForwardTape&>(tape).tangent(v.identifier()));
  for (const Complex& z : c)
    for (std::size_t j = 0; j < 2; ++j)
      run.derivative.push_back(static_cast<const ForwardTape&>(tape).tangent(z.component(j).identifier()));
  return run;
}

}  // namespace aggad::verify
