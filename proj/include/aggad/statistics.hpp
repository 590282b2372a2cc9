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

#include <json.hpp>

namespace aggad {

enum class TapeKind { kJacobian, kPrimal };

/// Logical byte counts per stack. The counts follow the record layouts
/// (5 + 12 d bytes per Jacobian statement, 11 byte header plus payload per
/// primal statement) and exclude allocator slack, which is reported
/// separately as reserved_bytes.
struct TapeStatistics {
  TapeKind kind = TapeKind::kJacobian;

  std::uint64_t statements = 0;
  /// Jacobian tape: rows recorded for aggregated assignments.
  /// Primal tape: statements with more than one output.
  std::uint64_t aggregate_statements = 0;

  std::uint64_t statement_bytes = 0;  // Jacobian: d + lhs id. Primal: header.
  std::uint64_t identifier_bytes = 0; // Jacobian only.
  std::uint64_t jacobian_bytes = 0;   // Jacobian only.
  std::uint64_t payload_bytes = 0;    // Primal only.
  std::uint64_t primal_vector_bytes = 0;
  std::uint64_t adjoint_bytes = 0;
  std::uint64_t registry_entries = 0;
  std::uint64_t reserved_bytes = 0;
  std::uint64_t max_identifier = 0;

  /// Bytes of the recorded statement streams, without the vectors.
  std::uint64_t tape_bytes() const {
    return statement_bytes + identifier_bytes + jacobian_bytes + payload_bytes;
  }
  std::uint64_t total_bytes() const { return tape_bytes() + primal_vector_bytes + adjoint_bytes; }
};

/// Bytes of a vector indexed by identifier, i.e. 8 * (max id + 1), or 0 when
/// no identifier has been issued.
inline std::uint64_t vector_bytes(std::uint64_t max_identifier) {
  return max_identifier == 0 ? 0 : 8 * (max_identifier + 1);
}

nlohmann::json to_json(const TapeStatistics& stats);
std::string csv_header(TapeKind kind);
std::string csv_row(const TapeStatistics& stats);

}  // namespace aggad
