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

#include <cstdint>
#include <string>
#include <vector>

#include "aggad/verify/checks.hpp"

namespace aggad::verify {

struct SweepOptions {
  std::size_t points = 5;
  std::uint64_t seed = 20261017;
  FDConfig fd;
  double dot_tolerance = 1e-12;
  double decomposed_tolerance = 1e-10;
};

/// Every registered operation shape, e.g. "mul(c,r)" or "sin(r)". Shapes use
/// r for an active real, c for an active complex, d for a real literal and k
/// for a complex literal.
std::vector<std::string> sweep_operation_names();

/// Checks every operation shape at `points` domain-safe points each:
///  - forward tangents against central finite differences,
///  - reverse adjoints against forward tangents (dot-product identity),
///  - complex shapes against the same computation with decomposed complex
///    numbers, recorded as real statements,
///  - mixed real/complex shapes: the real operand's adjoint equals the real
///    part of the adjoint obtained by promoting it to complex, bit for bit.
CheckReport op_sweep(const SweepOptions& options = {});

}  // namespace aggad::verify
