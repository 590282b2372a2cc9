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

#include <array>
#include <complex>

#include "aggad/aggad.hpp"

namespace aggad::support {

enum class CompoundOp { kAdd, kSub, kMul, kDiv };

inline constexpr CompoundOp kCompoundOps[] = {CompoundOp::kAdd, CompoundOp::kSub, CompoundOp::kMul,
                                              CompoundOp::kDiv};

inline const char* to_string(CompoundOp op) {
  switch (op) {
    case CompoundOp::kAdd: return "+=";
    case CompoundOp::kSub: return "-=";
    case CompoundOp::kMul: return "*=";
    case CompoundOp::kDiv: return "/=";
  }
  return "?";
}

/// Input adjoints (c.re, c.im, a.re, a.im) and tape bytes of one recording.
struct AliasRun {
  std::array<double, 4> adjoints{};
  std::uint64_t tape_bytes = 0;
  std::complex<double> value;
};

/// Records c op= a (aliased) or r = c op a (temporary) and reverses with
/// output adjoint rbar.
template <class Tape>
AliasRun alias_run(CompoundOp op, bool aliased, std::complex<double> c0, std::complex<double> a0,
                   std::complex<double> rbar) {
  using Complex = typename Tape::Complex;
  Tape tape;
  typename Tape::Scope scope(tape);
  Complex c = c0, a = a0;
  tape.register_input(c);
  tape.register_input(a);
  const std::array<Identifier, 4> in{c.component(0).identifier(), c.component(1).identifier(),
                                     a.component(0).identifier(), a.component(1).identifier()};
  Complex r;
  if (aliased) {
    switch (op) {
      case CompoundOp::kAdd: c += a; break;
      case CompoundOp::kSub: c -= a; break;
      case CompoundOp::kMul: c *= a; break;
      case CompoundOp::kDiv: c /= a; break;
    }
  } else {
    switch (op) {
      case CompoundOp::kAdd: r = c + a; break;
      case CompoundOp::kSub: r = c - a; break;
      case CompoundOp::kMul: r = c * a; break;
      case CompoundOp::kDiv: r = c / a; break;
    }
  }
  const Complex& out = aliased ? c : r;
  AliasRun run;
  run.value = out.value();
  run.tape_bytes = tape.statistics().tape_bytes();
  tape.gradient(out.component(0).identifier()) += rbar.real();
  tape.gradient(out.component(1).identifier()) += rbar.imag();
  tape.evaluate();
  for (std::size_t k = 0; k < 4; ++k) run.adjoints[k] = tape.gradient(in[k]);
  return run;
}

}  // namespace aggad::support
