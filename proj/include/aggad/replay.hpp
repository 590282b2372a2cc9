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
#include <cstring>
#include <tuple>
#include <utility>

#include "aggad/active.hpp"
#include "aggad/expression.hpp"

namespace aggad {

/// Sequential reader over the argument part of a primal statement payload:
/// one identifier per variable leaf slot, then the values of the passive
/// slots, then the constants, all in leaf order.
class PayloadReader {
 public:
  PayloadReader(const std::byte* ids, const std::byte* inactive, const std::byte* constants, const double* primals)
      : ids_(ids), inactive_(inactive), constants_(constants), primals_(primals) {}

  Identifier next_identifier() { return take<Identifier>(ids_); }
  double next_inactive() { return take<double>(inactive_); }
  double next_constant() { return take<double>(constants_); }
  double primal(Identifier id) const { return primals_[id]; }

 private:
  template <class T>
  static T take(const std::byte*& p) {
    T v;
    std::memcpy(&v, p, sizeof v);
    p += sizeof v;
    return v;
  }

  const std::byte* ids_;
  const std::byte* inactive_;
  const std::byte* constants_;
  const double* primals_;
};

/// Leaf of a replayed expression. Held by value inside replay trees, unlike
/// the active types it stands in for.
class ReplayReal : public ExpressionBase<ReplayReal, double> {
 public:
  static constexpr std::size_t kLeafCount = 1;
  static constexpr std::size_t kConstantCount = 0;

  ReplayReal() = default;
  ReplayReal(double value, Identifier id) : value_(value), id_(id) {}

  AGGAD_INLINE static ReplayReal read(PayloadReader& in) {
    const Identifier id = in.next_identifier();
    return {id == kPassiveIdentifier ? in.next_inactive() : in.primal(id), id};
  }

  double value() const { return value_; }
  Identifier identifier() const { return id_; }

  template <class F>
  void for_each_leaf(F&& f) const {
    f(*this);
  }
  template <class F>
  void for_each_constant(F&&) const {}

  template <class Sink>
  AGGAD_INLINE void push_adjoint(const std::array<double, 1>& bar, Sink&& sink) const {
    sink(*this, bar[0]);
  }

 private:
  double value_ = 0.0;
  Identifier id_ = kPassiveIdentifier;
};

template <class V>
class ReplayAggregate : public ExpressionBase<ReplayAggregate<V>, V> {
 public:
  static constexpr std::size_t kArity = kSizeOf<V>;
  static constexpr std::size_t kLeafCount = kArity;
  static constexpr std::size_t kConstantCount = 0;

  AGGAD_INLINE static ReplayAggregate read(PayloadReader& in) {
    ReplayAggregate r;
    for (std::size_t i = 0; i < kArity; ++i) r.components_[i] = ReplayReal::read(in);
    return r;
  }

  V value() const {
    std::array<double, kArity> c{};
    for (std::size_t i = 0; i < kArity; ++i) c[i] = components_[i].value();
    return AggregateTraits<V>::make(c);
  }

  template <class F>
  void for_each_leaf(F&& f) const {
    for (const ReplayReal& c : components_) f(c);
  }
  template <class F>
  void for_each_constant(F&&) const {}

  template <class Sink>
  AGGAD_INLINE void push_adjoint(const std::array<double, kArity>& bar, Sink&& sink) const {
    for (std::size_t i = 0; i < kArity; ++i) sink(components_[i], bar[i]);
  }

 private:
  std::array<ReplayReal, kArity> components_{};
};

/// Maps a recorded expression type to the type rebuilt from a payload.
template <class E>
struct Replay;

template <class Tape>
struct Replay<ActiveReal<Tape>> {
  using type = ReplayReal;
  AGGAD_INLINE static type build(PayloadReader& in) { return ReplayReal::read(in); }
};

template <class Tape, class V>
struct Replay<AggregatedActive<Tape, V>> {
  using type = ReplayAggregate<V>;
  AGGAD_INLINE static type build(PayloadReader& in) { return type::read(in); }
};

template <class V>
struct Replay<Constant<V>> {
  using type = Constant<V>;
  AGGAD_INLINE static type build(PayloadReader& in) {
    std::array<double, kSizeOf<V>> c{};
    for (double& x : c) x = in.next_constant();
    return Constant<V>(AggregateTraits<V>::make(c));
  }
};

template <class Op, class... Args>
struct Replay<Compute<Op, Args...>> {
  using type = Compute<Op, typename Replay<Args>::type...>;
  AGGAD_INLINE static type build(PayloadReader& in) {
    // Braced initialization reads the children in leaf order.
    std::tuple<typename Replay<Args>::type...> children{Replay<Args>::build(in)...};
    return std::apply([](auto&&... c) { return type(std::in_place, std::move(c)...); }, std::move(children));
  }
};

}  // namespace aggad
