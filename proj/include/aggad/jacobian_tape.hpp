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

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "aggad/active.hpp"
#include "aggad/chunked_stack.hpp"
#include "aggad/index_manager.hpp"
#include "aggad/statistics.hpp"

namespace aggad {

/// Jacobian taping. Each scalar statement stores its argument count, the
/// left-hand side identifier and one (partial, identifier) pair per nonzero
/// active argument. Aggregated assignments are split into one such statement
/// per output component.
template <class IndexManager>
class JacobianTape : public TapeBinding<JacobianTape<IndexManager>> {
 public:
  using Real = ActiveReal<JacobianTape>;
  using Complex = ActiveComplex<JacobianTape>;
  static constexpr TapeKind kKind = TapeKind::kJacobian;
  static constexpr std::size_t kMaxArguments = 255;

  explicit JacobianTape(std::size_t chunk_bytes = kDefaultChunkBytes, IndexManager index_manager = IndexManager())
      : index_(std::move(index_manager)),
        arg_counts_(chunk_bytes),
        lhs_ids_(chunk_bytes),
        jacobians_(chunk_bytes),
        arg_ids_(chunk_bytes) {}

  JacobianTape(const JacobianTape&) = delete;
  JacobianTape& operator=(const JacobianTape&) = delete;

  void set_recording(bool on) { recording_ = on; }
  bool is_recording() const { return recording_; }

  void register_input(Real& x) {
    index_.free(x.identifier());
    x.identifier_ref() = index_.acquire();
  }

  template <class V>
  void register_input(AggregatedActive<JacobianTape, V>& x) {
    for (Real& c : x.components_ref()) register_input(c);
  }

  template <class E>
  void store(Real& lhs, const E& rhs) {
    const double value = rhs.value();
    if (!recording_) {
      make_passive(lhs, value);
      return;
    }
    entries_.clear();
    const bool any_active = collect_row(rhs, std::array<double, 1>{1.0});
    if (!any_active && !lhs.is_active()) {
      lhs.value_ref() = value;
      return;
    }
    check_row_size(entries_.size());
    const Identifier id = index_.assign(lhs.identifier());
    push_statement(id, 0, entries_.size());
    lhs.identifier_ref() = id;
    lhs.value_ref() = value;
  }

  /// All rows are collected before any left-hand side identifier changes, so
  /// right-hand sides that read the left-hand side (c *= a) are recorded with
  /// the old identifiers.
  template <std::size_t N, class E>
  void store_aggregate(std::array<Real, N>& lhs, const E& rhs) {
    const auto values = components(rhs.value());
    if (!recording_) {
      for (std::size_t k = 0; k < N; ++k) make_passive(lhs[k], values[k]);
      return;
    }
    entries_.clear();
    std::array<std::size_t, N + 1> row_begin{};
    bool any_active = false;
    for (std::size_t k = 0; k < N; ++k) {
      std::array<double, N> seed{};
      seed[k] = 1.0;
      any_active = collect_row(rhs, seed) || any_active;
      row_begin[k + 1] = entries_.size();
      check_row_size(row_begin[k + 1] - row_begin[k]);
    }
    bool lhs_active = false;
    std::array<Identifier, N> old_ids{};
    for (std::size_t k = 0; k < N; ++k) {
      old_ids[k] = lhs[k].identifier();
      lhs_active = lhs_active || old_ids[k] != kPassiveIdentifier;
    }
    if (!any_active && !lhs_active) {
      for (std::size_t k = 0; k < N; ++k) lhs[k].value_ref() = values[k];
      return;
    }
    std::array<Identifier, N> new_ids{};
    index_.acquire_aggregate(old_ids, new_ids);
    for (std::size_t k = 0; k < N; ++k) push_statement(new_ids[k], row_begin[k], row_begin[k + 1]);
    aggregate_rows_ += N;
    for (std::size_t k = 0; k < N; ++k) {
      lhs[k].identifier_ref() = new_ids[k];
      lhs[k].value_ref() = values[k];
    }
  }

  void free(Identifier id) { index_.free(id); }

  double& gradient(Identifier id) {
    if (id >= adjoints_.size()) adjoints_.resize(std::size_t{id} + 1, 0.0);
    return adjoints_[id];
  }
  double gradient(Identifier id) const { return id < adjoints_.size() ? adjoints_[id] : 0.0; }

  const std::vector<double>& adjoints() const { return adjoints_; }

  /// Interprets the tape from the last statement to the first.
  void evaluate() {
    adjoints_.resize(std::max<std::size_t>(adjoints_.size(), std::size_t{index_.max_issued()} + 1), 0.0);
    auto counts = arg_counts_.reverse_cursor();
    auto lhs = lhs_ids_.reverse_cursor();
    auto jac = jacobians_.reverse_cursor();
    auto ids = arg_ids_.reverse_cursor();
    double* adj = adjoints_.data();
    for (std::size_t s = arg_counts_.size(); s > 0; --s) {
      const std::size_t d = *counts.take_back(1);
      const Identifier w = *lhs.take_back(1);
      const double* partials = jac.take_back(d);
      const Identifier* args = ids.take_back(d);
      const double bar = adj[w];
      adj[w] = 0.0;
      if (bar == 0.0) continue;
      for (std::size_t i = 0; i < d; ++i) adj[args[i]] += partials[i] * bar;
    }
  }

  /// Seeds the given adjoints, interprets the tape and returns the adjoint
  /// vector.
  template <class SeedMap>
  const std::vector<double>& evaluate_reverse(const SeedMap& seed) {
    for (const auto& [id, value] : seed) gradient(id) = value;
    evaluate();
    return adjoints_;
  }

  void clear_adjoints() { std::fill(adjoints_.begin(), adjoints_.end(), 0.0); }

  void reset() {
    arg_counts_.clear();
    lhs_ids_.clear();
    jacobians_.clear();
    arg_ids_.clear();
    adjoints_.clear();
    aggregate_rows_ = 0;
    index_.reset();
  }

  std::size_t statement_count() const { return arg_counts_.size(); }

  TapeStatistics statistics() const {
    TapeStatistics s;
    s.kind = kKind;
    s.statements = arg_counts_.size();
    s.aggregate_statements = aggregate_rows_;
    s.statement_bytes = s.statements * (bytes::kArgumentCount + bytes::kIdentifier);
    s.jacobian_bytes = jacobians_.size() * bytes::kReal;
    s.identifier_bytes = arg_ids_.size() * bytes::kIdentifier;
    s.max_identifier = index_.max_issued();
    s.adjoint_bytes = vector_bytes(s.max_identifier);
    s.reserved_bytes = arg_counts_.reserved_bytes() + lhs_ids_.reserved_bytes() + jacobians_.reserved_bytes() +
                       arg_ids_.reserved_bytes() + adjoints_.capacity() * sizeof(double);
    return s;
  }

  IndexManager& index_manager() { return index_; }
  const IndexManager& index_manager() const { return index_; }

 private:
  struct Entry {
    double partial;
    Identifier id;
  };

  template <class E, std::size_t N>
  bool collect_row(const E& rhs, const std::array<double, N>& seed) {
    bool any_active = false;
    rhs.push_adjoint(seed, [&](const auto& leaf, double partial) {
      const Identifier id = leaf.identifier();
      if (id == kPassiveIdentifier) return;
      any_active = true;
      if (partial != 0.0) entries_.push_back({partial, id});
    });
    return any_active;
  }

  static void check_row_size(std::size_t d) {
    if (d > kMaxArguments)
      throw std::length_error("statement has " + std::to_string(d) + " arguments; at most " +
                              std::to_string(kMaxArguments) + " fit a Jacobian statement, split the expression");
  }

  void push_statement(Identifier lhs, std::size_t begin, std::size_t end) {
    const std::size_t d = end - begin;
    arg_counts_.push(static_cast<std::uint8_t>(d));
    lhs_ids_.push(lhs);
    double* jac = jacobians_.reserve(d);
    Identifier* ids = arg_ids_.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
      jac[i] = entries_[begin + i].partial;
      ids[i] = entries_[begin + i].id;
    }
  }

  void make_passive(Real& lhs, double value) {
    index_.free(lhs.identifier());
    lhs.identifier_ref() = kPassiveIdentifier;
    lhs.value_ref() = value;
  }

  IndexManager index_;
  bool recording_ = true;
  ChunkedStack<std::uint8_t> arg_counts_;
  ChunkedStack<Identifier> lhs_ids_;
  ChunkedStack<double> jacobians_;
  ChunkedStack<Identifier> arg_ids_;
  std::vector<Entry> entries_;
  std::vector<double> adjoints_;
  std::uint64_t aggregate_rows_ = 0;
};

using JacobianLinearTape = JacobianTape<LinearIndexManager>;
using JacobianReuseTape = JacobianTape<ReuseIndexManager>;

}  // namespace aggad
