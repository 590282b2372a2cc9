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

#include "aggad/statistics.hpp"

#include <sstream>

namespace aggad {

nlohmann::json to_json(const TapeStatistics& s) {
  nlohmann::json j;
  if (s.kind == TapeKind::kJacobian) {
    j["kind"] = "jacobian";
    j["stmts_bytes"] = s.statement_bytes;
    j["jacobian_bytes"] = s.jacobian_bytes;
    j["identifier_bytes"] = s.identifier_bytes;
  } else {
    j["kind"] = "primal";
    j["header_bytes"] = s.statement_bytes;
    j["payload_bytes"] = s.payload_bytes;
    j["primal_vector_bytes"] = s.primal_vector_bytes;
    j["registry_entries"] = s.registry_entries;
  }
  j["adjoint_bytes"] = s.adjoint_bytes;
  j["total_bytes"] = s.total_bytes();
  j["statements"] = s.statements;
  j["reserved_bytes"] = s.reserved_bytes;
  return j;
}

std::string csv_header(TapeKind kind) {
  if (kind == TapeKind::kJacobian) return "stmts_bytes,jacobian_bytes,identifier_bytes,adjoint_bytes,total_bytes";
  return "header_bytes,payload_bytes,primal_vector_bytes,adjoint_bytes,registry_entries,total_bytes";
}

std::string csv_row(const TapeStatistics& s) {
  std::ostringstream out;
  if (s.kind == TapeKind::kJacobian) {
    out << s.statement_bytes << ',' << s.jacobian_bytes << ',' << s.identifier_bytes << ',' << s.adjoint_bytes
        << ',' << s.total_bytes();
  } else {
    out << s.statement_bytes << ',' << s.payload_bytes << ',' << s.primal_vector_bytes << ',' << s.adjoint_bytes
        << ',' << s.registry_entries << ',' << s.total_bytes();
  }
  return out.str();
}

}  // namespace aggad
