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

#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "aggad/config.hpp"

namespace aggad {

/// Issues strictly increasing identifiers; nothing is ever reissued until the
/// tape is reset.
class LinearIndexManager {
 public:
  static constexpr bool kReusesIdentifiers = false;
  static constexpr const char* kName = "linear";

  explicit LinearIndexManager(Identifier max_id = std::numeric_limits<Identifier>::max())
      : max_id_(max_id) {}

  Identifier acquire() {
    if (last_ >= max_id_)
      throw std::overflow_error("identifier space exhausted after " + std::to_string(last_) +
                                " ids (linear index manager)");
    return ++last_;
  }

  /// Identifier for the left-hand side of a scalar assignment.
  Identifier assign(Identifier /*current*/) { return acquire(); }

  /// Acquires out.size() new identifiers. Old identifiers are not reused.
  void acquire_aggregate(std::span<const Identifier> /*old_ids*/, std::span<Identifier> out) {
    for (Identifier& id : out) id = acquire();
  }

  void free(Identifier /*id*/) {}

  Identifier max_issued() const { return last_; }
  Identifier next() const { return last_ + 1; }

  void reset() { last_ = 0; }

 private:
  Identifier last_ = 0;
  Identifier max_id_;
};

/// Recycles identifiers of destroyed or overwritten values through a LIFO
/// free list.
class ReuseIndexManager {
 public:
  static constexpr bool kReusesIdentifiers = true;
  static constexpr const char* kName = "reuse";

  explicit ReuseIndexManager(Identifier max_id = std::numeric_limits<Identifier>::max())
      : max_id_(max_id) {}

  Identifier acquire() {
    if (!free_list_.empty()) {
      Identifier id = free_list_.back();
      free_list_.pop_back();
      on_free_list_[id] = false;
      return id;
    }
    if (last_ >= max_id_)
      throw std::overflow_error("identifier space exhausted after " + std::to_string(last_) +
                                " ids (reuse index manager)");
    ++last_;
    on_free_list_.push_back(false);
    return last_;
  }

  /// Scalar assignments keep the identifier of an already active left-hand side.
  Identifier assign(Identifier current) { return current != kPassiveIdentifier ? current : acquire(); }

  /// New identifiers are acquired before the old ones are released, so the
  /// result never shares an identifier with old_ids.
  void acquire_aggregate(std::span<const Identifier> old_ids, std::span<Identifier> out) {
    for (Identifier& id : out) id = acquire();
    for (Identifier id : old_ids) free(id);
  }

  void free(Identifier id) {
    if (id == kPassiveIdentifier) return;
    AGGAD_EXPECTS(id <= last_, "freeing an identifier that was never issued");
    AGGAD_EXPECTS(!on_free_list_[id], "identifier freed twice");
    on_free_list_[id] = true;
    free_list_.push_back(id);
  }

  Identifier max_issued() const { return last_; }
  Identifier next() const { return free_list_.empty() ? last_ + 1 : free_list_.back(); }
  std::size_t free_count() const { return free_list_.size(); }

  /// Live values keep their identifiers across tape resets.
  void reset() {}

 private:
  Identifier last_ = 0;
  Identifier max_id_;
  std::vector<Identifier> free_list_;
  std::vector<bool> on_free_list_ = std::vector<bool>(1, false);
};

}  // namespace aggad
