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
#include <vector>

#include "aggad/active.hpp"

namespace aggad::verify {

/// Tangent propagation through the same active types. Nothing is recorded:
/// each assignment evaluates the forward update of its right-hand side from
/// the tangents of the leaves, so the result is an AD oracle independent of
/// the reverse interpreters.
class ForwardTape : public TapeBinding<ForwardTape> {
 public:
  using Real = ActiveReal<ForwardTape>;
  using Complex = ActiveComplex<ForwardTape>;

  void register_input(Real& x) { x.identifier_ref() = fresh(); }

  template <class V>
  void register_input(AggregatedActive<ForwardTape, V>& x) {
    for (Real& c : x.components_ref()) register_input(c);
  }

  template <class E>
  void store(Real& lhs, const E& rhs) {
    const double t = rhs.tangent(tangent_of())[0];
    const Identifier id = fresh();
    tangents_[id] = t;
    lhs.identifier_ref() = id;
    lhs.value_ref() = rhs.value();
  }

  template <std::size_t N, class E>
  void store_aggregate(std::array<Real, N>& lhs, const E& rhs) {
    const auto t = rhs.tangent(tangent_of());
    const auto values = components(rhs.value());
    for (std::size_t k = 0; k < N; ++k) {
      const Identifier id = fresh();
      tangents_[id] = t[k];
      lhs[k].identifier_ref() = id;
      lhs[k].value_ref() = values[k];
    }
  }

  void free(Identifier) {}

  double& tangent(Identifier id) { return tangents_.at(id); }
  double tangent(Identifier id) const { return id < tangents_.size() ? tangents_[id] : 0.0; }

 private:
  Identifier fresh() {
    tangents_.push_back(0.0);
    return static_cast<Identifier>(tangents_.size() - 1);
  }

  auto tangent_of() const {
    return [this](const auto& leaf) { return tangent(leaf.identifier()); };
  }

  // Slot 0 belongs to passive values and always holds 0.
  std::vector<double> tangents_{0.0};
};

}  // namespace aggad::verify
