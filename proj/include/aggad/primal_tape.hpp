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
#include <cstring>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "aggad/active.hpp"
#include "aggad/chunked_stack.hpp"
#include "aggad/index_manager.hpp"
#include "aggad/replay.hpp"
#include "aggad/statistics.hpp"

namespace aggad {

/// Primal value taping. A statement stores a handle to a reverse routine
/// generated for the static expression shape, plus the data that routine needs
/// to rebuild the expression: left-hand side identifiers and overwritten
/// primal values, argument identifiers, passive argument values and constants.
/// Multi-output statements use one handle for all outputs.
///
/// Header (11 bytes): n_inactive u8, handle u64, payload size u16.
/// Payload: lhs ids (4p), old lhs primals (8p), argument ids (4d, 0 for
/// passive slots), passive argument values (8 n_inactive), constants (8 c).
/// Byte-level access for tests that damage a recorded tape on purpose.
struct PrimalTapeBackdoor;

template <class IndexManager>
class PrimalTape : public TapeBinding<PrimalTape<IndexManager>> {
 public:
  using Real = ActiveReal<PrimalTape>;
  using Complex = ActiveComplex<PrimalTape>;
  static constexpr TapeKind kKind = TapeKind::kPrimal;
  static constexpr std::size_t kMaxPayload = 65535;
  static constexpr std::size_t kMaxInactive = 255;
  static constexpr std::uint64_t kInputHandle = 0;

  using Routine = void (*)(PrimalTape&, const std::byte* payload, std::size_t n_inactive);

  /// Per-shape metadata, created on first use of an expression type.
  struct HandleEntry {
    Routine reverse;
    std::size_t outputs;
    std::size_t arguments;
    std::size_t constants;
  };

  explicit PrimalTape(std::size_t chunk_bytes = kDefaultChunkBytes, IndexManager index_manager = IndexManager())
      : index_(std::move(index_manager)), headers_(chunk_bytes), payload_(chunk_bytes) {
    registry_.push_back({&reverse_input, 1, 0, 0});
  }

  PrimalTape(const PrimalTape&) = delete;
  PrimalTape& operator=(const PrimalTape&) = delete;

  void set_recording(bool on) { recording_ = on; }
  bool is_recording() const { return recording_; }

  /// Inputs are recorded as statements without arguments so that the reverse
  /// sweep can restore the primal value an input overwrote.
  void register_input(Real& x) {
    index_.free(x.identifier());
    const Identifier id = index_.acquire();
    ensure_size(id);
    std::byte* p = begin_statement(kInputHandle, 0, bytes::kIdentifier + bytes::kReal);
    put(p, id);
    put(p, primals_[id]);
    primals_[id] = x.value();
    x.identifier_ref() = id;
  }

  template <class V>
  void register_input(AggregatedActive<PrimalTape, V>& x) {
    for (Real& c : x.components_ref()) register_input(c);
  }

  template <class E>
  void store(Real& lhs, const E& rhs) {
    const double value = rhs.value();
    if (!recording_) {
      make_passive(lhs, value);
      return;
    }
    const auto [any_active, n_inactive] = scan(rhs);
    if (!any_active && !lhs.is_active()) {
      lhs.value_ref() = value;
      return;
    }
    const Identifier id = index_.assign(lhs.identifier());
    ensure_size(id);
    std::array<Identifier, 1> ids{id};
    write<E>(rhs, ids, n_inactive);
    primals_[id] = value;
    lhs.identifier_ref() = id;
    lhs.value_ref() = value;
  }

  template <std::size_t N, class E>
  void store_aggregate(std::array<Real, N>& lhs, const E& rhs) {
    const auto values = components(rhs.value());
    if (!recording_) {
      for (std::size_t k = 0; k < N; ++k) make_passive(lhs[k], values[k]);
      return;
    }
    const auto [any_active, n_inactive] = scan(rhs);
    std::array<Identifier, N> old_ids{};
    bool lhs_active = false;
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
    for (Identifier id : new_ids) ensure_size(id);
    write<E>(rhs, new_ids, n_inactive);
    if constexpr (N > 1) ++aggregate_statements_;
    for (std::size_t k = 0; k < N; ++k) {
      primals_[new_ids[k]] = values[k];
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

  /// Primal values of the current recording state, indexed by identifier.
  const std::vector<double>& primals() const { return primals_; }

  /// Primal vector as left by the last reverse sweep. The sweep works on a
  /// copy so recording can continue afterwards; after a full sweep this equals
  /// the primal vector at recording start.
  const std::vector<double>& reversal_primals() const { return sweep_primals_; }

  void evaluate() {
    const std::size_t n = std::size_t{index_.max_issued()} + 1;
    adjoints_.resize(std::max(adjoints_.size(), n), 0.0);
    ensure_size(index_.max_issued());
    sweep_primals_ = primals_;
    auto headers = headers_.reverse_cursor();
    auto payload = payload_.reverse_cursor();
    for (std::size_t s = statements_; s > 0; --s) {
      const std::byte* h = headers.take_back(bytes::kPrimalHeader);
      const auto [n_inactive, handle, size] = read_header(h);
      const std::byte* p = payload.take_back(size);
      if (handle >= registry_.size())
        throw std::runtime_error("primal tape corrupted: statement " + std::to_string(s - 1) + " has handle " +
                                 std::to_string(handle) + " but only " + std::to_string(registry_.size()) +
                                 " are registered");
      registry_[handle].reverse(*this, p, n_inactive);
    }
  }

  template <class SeedMap>
  const std::vector<double>& evaluate_reverse(const SeedMap& seed) {
    for (const auto& [id, value] : seed) gradient(id) = value;
    evaluate();
    return adjoints_;
  }

  void clear_adjoints() { std::fill(adjoints_.begin(), adjoints_.end(), 0.0); }

  void reset() {
    headers_.clear();
    payload_.clear();
    statements_ = 0;
    aggregate_statements_ = 0;
    adjoints_.clear();
    index_.reset();
  }

  /// Walks the headers backwards and checks that the payload sizes account
  /// for the payload stream exactly and that every handle is registered.
  bool verify_layout() const {
    auto headers = headers_.reverse_cursor();
    auto payload = payload_.reverse_cursor();
    std::size_t total = 0;
    for (std::size_t s = statements_; s > 0; --s) {
      const auto [n_inactive, handle, size] = read_header(headers.take_back(bytes::kPrimalHeader));
      if (handle >= registry_.size() || size > payload_.size() - total) return false;
      const HandleEntry& e = registry_[handle];
      const std::size_t expected = 12 * e.outputs + bytes::kIdentifier * e.arguments +
                                   bytes::kReal * (n_inactive + e.constants);
      if (expected != size) return false;
      payload.take_back(size);
      total += size;
    }
    return total == payload_.size() && headers.at_begin() && payload.at_begin();
  }

  std::size_t statement_count() const { return statements_; }

  /// Handle of the reverse routine for expression type E, registering it on
  /// first use.
  template <class E>
  std::uint64_t handle_for() {
    static constexpr char tag = 0;
    auto [it, inserted] = handles_.try_emplace(&tag, registry_.size());
    if (inserted)
      registry_.push_back({&reverse_statement<E>, E::kArity, E::kLeafCount, E::kConstantCount});
    return it->second;
  }

  const std::vector<HandleEntry>& registry() const { return registry_; }

  TapeStatistics statistics() const {
    TapeStatistics s;
    s.kind = kKind;
    s.statements = statements_;
    s.aggregate_statements = aggregate_statements_;
    s.statement_bytes = headers_.size();
    s.payload_bytes = payload_.size();
    s.max_identifier = index_.max_issued();
    s.primal_vector_bytes = vector_bytes(s.max_identifier);
    s.adjoint_bytes = vector_bytes(s.max_identifier);
    s.registry_entries = registry_.size() - 1;
    s.reserved_bytes = headers_.reserved_bytes() + payload_.reserved_bytes() +
                       (primals_.capacity() + adjoints_.capacity()) * sizeof(double);
    return s;
  }

  IndexManager& index_manager() { return index_; }
  const IndexManager& index_manager() const { return index_; }

 private:
  friend struct PrimalTapeBackdoor;

  struct Header {
    std::size_t n_inactive;
    std::uint64_t handle;
    std::size_t size;
  };

  template <class T>
  static void put(std::byte*& p, const T& v) {
    std::memcpy(p, &v, sizeof v);
    p += sizeof v;
  }
  template <class T>
  static T get(const std::byte*& p) {
    T v;
    std::memcpy(&v, p, sizeof v);
    p += sizeof v;
    return v;
  }

  static Header read_header(const std::byte* h) {
    Header out;
    out.n_inactive = get<std::uint8_t>(h);
    out.handle = get<std::uint64_t>(h);
    out.size = get<std::uint16_t>(h);
    return out;
  }

  struct Scan {
    bool any_active;
    std::size_t n_inactive;
  };

  template <class E>
  static Scan scan(const E& rhs) {
    Scan s{false, 0};
    rhs.for_each_leaf([&](const auto& leaf) {
      if (leaf.identifier() == kPassiveIdentifier)
        ++s.n_inactive;
      else
        s.any_active = true;
    });
    return s;
  }

  std::byte* begin_statement(std::uint64_t handle, std::size_t n_inactive, std::size_t size) {
    if (size > kMaxPayload)
      throw std::length_error("primal statement payload of " + std::to_string(size) + " bytes exceeds " +
                              std::to_string(kMaxPayload) + "; split the expression");
    std::byte* h = headers_.reserve(bytes::kPrimalHeader);
    put(h, static_cast<std::uint8_t>(n_inactive));
    put(h, handle);
    put(h, static_cast<std::uint16_t>(size));
    ++statements_;
    return payload_.reserve(size);
  }

  template <class E, std::size_t P>
  void write(const E& rhs, const std::array<Identifier, P>& lhs_ids, std::size_t n_inactive) {
    if (n_inactive > kMaxInactive)
      throw std::length_error("statement has " + std::to_string(n_inactive) + " passive arguments; at most " +
                              std::to_string(kMaxInactive) + " fit a primal statement");
    constexpr std::size_t d = E::kLeafCount;
    const std::size_t size =
        12 * P + bytes::kIdentifier * d + bytes::kReal * (n_inactive + E::kConstantCount);
    const std::uint64_t handle = handle_for<E>();
    std::byte* p = begin_statement(handle, n_inactive, size);
    for (Identifier id : lhs_ids) put(p, id);
    for (Identifier id : lhs_ids) put(p, primals_[id]);
    std::byte* inactive = p + bytes::kIdentifier * d;
    std::byte* constants = inactive + bytes::kReal * n_inactive;
    rhs.for_each_leaf([&](const auto& leaf) {
      const Identifier id = leaf.identifier();
      put(p, id);
      if (id == kPassiveIdentifier) put(inactive, leaf.value());
    });
    rhs.for_each_constant([&](double c) { put(constants, c); });
  }

  static void reverse_input(PrimalTape& tape, const std::byte* p, std::size_t) {
    const Identifier id = get<Identifier>(p);
    tape.sweep_primals_[id] = get<double>(p);
  }

  template <class E>
  static void reverse_statement(PrimalTape& tape, const std::byte* p, std::size_t n_inactive) {
    constexpr std::size_t P = E::kArity;
    constexpr std::size_t d = E::kLeafCount;
    double* adj = tape.adjoints_.data();
    double* primal = tape.sweep_primals_.data();

    std::array<Identifier, P> lhs{};
    std::array<double, P> bar{};
    bool any = false;
    for (std::size_t k = 0; k < P; ++k) {
      lhs[k] = get<Identifier>(p);
      bar[k] = adj[lhs[k]];
      adj[lhs[k]] = 0.0;
      any = any || bar[k] != 0.0;
    }
    for (std::size_t k = 0; k < P; ++k) primal[lhs[k]] = get<double>(p);
    if (!any) return;

    const std::byte* inactive = p + bytes::kIdentifier * d;
    PayloadReader in(p, inactive, inactive + bytes::kReal * n_inactive, primal);
    const auto expr = Replay<E>::build(in);
    for (std::size_t k = P; k > 0; --k) {
      const double w = bar[k - 1];
      if (w == 0.0) continue;
      std::array<double, P> seed{};
      seed[k - 1] = 1.0;
      expr.push_adjoint(seed, [&](const auto& leaf, double partial) {
        const Identifier id = leaf.identifier();
        if (id != kPassiveIdentifier && partial != 0.0) adj[id] += partial * w;
      });
    }
  }

  void ensure_size(Identifier id) {
    if (id >= primals_.size()) primals_.resize(std::max<std::size_t>(std::size_t{id} + 1, 2 * primals_.size()), 0.0);
  }

  void make_passive(Real& lhs, double value) {
    index_.free(lhs.identifier());
    lhs.identifier_ref() = kPassiveIdentifier;
    lhs.value_ref() = value;
  }

  IndexManager index_;
  bool recording_ = true;
  ChunkedStack<std::byte> headers_;
  ChunkedStack<std::byte> payload_;
  std::size_t statements_ = 0;
  std::uint64_t aggregate_statements_ = 0;
  std::vector<HandleEntry> registry_;
  std::unordered_map<const void*, std::uint64_t> handles_;
  std::vector<double> primals_;
  std::vector<double> sweep_primals_;
  std::vector<double> adjoints_;
};

using PrimalLinearTape = PrimalTape<LinearIndexManager>;
using PrimalReuseTape = PrimalTape<ReuseIndexManager>;

}  // namespace aggad
