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
#include <cstdio>
#include <cstdlib>

namespace aggad {

/// Index into the adjoint vector. 0 marks a passive value.
using Identifier = std::uint32_t;

inline constexpr Identifier kPassiveIdentifier = 0;

/// Byte sizes of the recorded fields. They define the logical tape size that
/// the statistics report, independent of how the stacks are laid out in memory.
namespace bytes {
inline constexpr std::size_t kArgumentCount = 1;
inline constexpr std::size_t kIdentifier = 4;
inline constexpr std::size_t kReal = 8;
inline constexpr std::size_t kHandle = 8;
inline constexpr std::size_t kInactiveCount = 1;
inline constexpr std::size_t kDynamicSize = 2;
inline constexpr std::size_t kPrimalHeader = kInactiveCount + kHandle + kDynamicSize;
}  // namespace bytes

static_assert(sizeof(Identifier) == bytes::kIdentifier);
static_assert(sizeof(double) == bytes::kReal);

[[noreturn]] inline void contract_violation(const char* what, const char* file, int line) {
  std::fprintf(stderr, "aggad: contract violation: %s (%s:%d)\n", what, file, line);
  std::abort();
}

}  // namespace aggad

// Small per-node helpers of expression trees. Deep trees exhaust the
// compiler's inlining budget, and an out-of-line 2x2 block product costs more
// than the arithmetic it performs.
#define AGGAD_INLINE [[gnu::always_inline]] inline

// Always-on precondition check for programming errors (double free, bad
// component index). Cheap enough to keep in release builds.
#define AGGAD_EXPECTS(cond, msg)                                \
  do {                                                          \
    if (!(cond)) ::aggad::contract_violation(msg, __FILE__, __LINE__); \
  } while (false)
