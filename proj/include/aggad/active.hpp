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
#include <utility>

#include "aggad/expression.hpp"
#include "aggad/operations.hpp"

namespace aggad {

/// Per-thread binding of the tape that records assignments of active values.
template <class Tape>
class TapeBinding {
 public:
  static Tape* active() { return current_; }

  /// Makes `tape` the recording target of this thread until the guard dies.
  class Scope {
   public:
    explicit Scope(Tape& tape) : previous_(current_) { current_ = &tape; }
    ~Scope() { current_ = previous_; }
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;

   private:
    Tape* previous_;
  };

 private:
  static inline thread_local Tape* current_ = nullptr;
};

/// A real value paired with the identifier of its adjoint.
template <class Tape>
class ActiveReal : public ExpressionBase<ActiveReal<Tape>, double> {
 public:
  using TapeType = Tape;
  static constexpr bool kIsVariable = true;
  static constexpr std::size_t kLeafCount = 1;
  static constexpr std::size_t kConstantCount = 0;
  static constexpr std::size_t kArity = 1;

  ActiveReal() = default;
  ActiveReal(double v) : value_(v) {}  // NOLINT: passive values convert implicitly
  ActiveReal(const ActiveReal& other) { assign(other); }
  ActiveReal(ActiveReal&& other) noexcept : value_(other.value_), id_(std::exchange(other.id_, kPassiveIdentifier)) {}

  template <RealExpression E>
  ActiveReal(const E& e) {  // NOLINT
    assign(e);
  }

  ~ActiveReal() { release(); }

  ActiveReal& operator=(const ActiveReal& other) {
    assign(other);
    return *this;
  }

  ActiveReal& operator=(ActiveReal&& other) noexcept {
    if (this != &other) {
      release();
      value_ = other.value_;
      id_ = std::exchange(other.id_, kPassiveIdentifier);
    }
    return *this;
  }

  ActiveReal& operator=(double v) {
    assign(Constant<double>(v));
    return *this;
  }

  template <RealExpression E>
  ActiveReal& operator=(const E& e) {
    assign(e);
    return *this;
  }

  template <class R>
    requires(RealExpression<R> || PassiveReal<R>)
  ActiveReal& operator+=(const R& r) {
    assign(*this + r);
    return *this;
  }
  template <class R>
    requires(RealExpression<R> || PassiveReal<R>)
  ActiveReal& operator-=(const R& r) {
    assign(*this - r);
    return *this;
  }
  template <class R>
    requires(RealExpression<R> || PassiveReal<R>)
  ActiveReal& operator*=(const R& r) {
    assign(*this * r);
    return *this;
  }
  template <class R>
    requires(RealExpression<R> || PassiveReal<R>)
  ActiveReal& operator/=(const R& r) {
    assign(*this / r);
    return *this;
  }

  double value() const { return value_; }
  Identifier identifier() const { return id_; }
  bool is_active() const { return id_ != kPassiveIdentifier; }

  // Tape access to the left-hand side of an assignment.
  double& value_ref() { return value_; }
  Identifier& identifier_ref() { return id_; }

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

  template <class TangentOf>
  std::array<double, 1> tangent(TangentOf&& tangent_of) const {
    return {tangent_of(*this)};
  }

 private:
  template <class E>
  void assign(const E& e) {
    if (Tape* tape = TapeBinding<Tape>::active())
      tape->store(*this, e);
    else
      value_ = e.value();
  }

  void release() {
    if (id_ == kPassiveIdentifier) return;
    if (Tape* tape = TapeBinding<Tape>::active()) tape->free(id_);
    id_ = kPassiveIdentifier;
  }

  double value_ = 0.0;
  Identifier id_ = kPassiveIdentifier;
};

/// An n-component aggregate of active reals that takes part in expressions as
/// a single node. Assignments are recorded as one multi-output statement.
template <class Tape, class V>
class AggregatedActive : public ExpressionBase<AggregatedActive<Tape, V>, V> {
 public:
  using TapeType = Tape;
  using Traits = AggregateTraits<V>;
  using Component = ActiveReal<Tape>;
  static constexpr std::size_t kArity = Traits::kSize;
  static constexpr bool kIsVariable = true;
  static constexpr std::size_t kLeafCount = kArity;
  static constexpr std::size_t kConstantCount = 0;

  AggregatedActive() = default;
  AggregatedActive(const V& v) { set_passive(v); }  // NOLINT
  AggregatedActive(const AggregatedActive& other) { assign(other); }
  AggregatedActive(AggregatedActive&&) noexcept = default;

  template <Expression E>
    requires std::is_same_v<typename E::Value, V>
  AggregatedActive(const E& e) {  // NOLINT
    assign(e);
  }

  /// Construction from a real, C(alpha) = (alpha, 0).
  template <class R>
    requires(kIsComplex<V> && RealExpression<R>)
  explicit AggregatedActive(const R& re) {
    assign(construct<V>(re, 0.0));
  }

  /// Construction from two reals.
  template <class R, class I>
    requires(kIsComplex<V> && RealOperands<R, I>)
  AggregatedActive(const R& re, const I& im) {
    assign(construct<V>(re, im));
  }

  AggregatedActive(double re, double im)
    requires kIsComplex<V>
  {
    set_passive(V(re, im));
  }

  AggregatedActive& operator=(const AggregatedActive& other) {
    assign(other);
    return *this;
  }
  AggregatedActive& operator=(AggregatedActive&&) noexcept = default;

  AggregatedActive& operator=(const V& v) {
    assign(Constant<V>(v));
    return *this;
  }

  template <Expression E>
    requires std::is_same_v<typename E::Value, V>
  AggregatedActive& operator=(const E& e) {
    assign(e);
    return *this;
  }

  template <class R>
    requires(kIsComplex<V> && Operand<R>)
  AggregatedActive& operator+=(const R& r) {
    assign(*this + r);
    return *this;
  }
  template <class R>
    requires(kIsComplex<V> && Operand<R>)
  AggregatedActive& operator-=(const R& r) {
    assign(*this - r);
    return *this;
  }
  template <class R>
    requires(kIsComplex<V> && Operand<R>)
  AggregatedActive& operator*=(const R& r) {
    assign(*this * r);
    return *this;
  }
  template <class R>
    requires(kIsComplex<V> && Operand<R>)
  AggregatedActive& operator/=(const R& r) {
    assign(*this / r);
    return *this;
  }

  V value() const {
    std::array<double, kArity> c{};
    for (std::size_t i = 0; i < kArity; ++i) c[i] = components_[i].value();
    return Traits::make(c);
  }

  const Component& component(std::size_t i) const {
    AGGAD_EXPECTS(i < kArity, "component index out of range");
    return components_[i];
  }
  Component& component(std::size_t i) {
    AGGAD_EXPECTS(i < kArity, "component index out of range");
    return components_[i];
  }
  std::array<Component, kArity>& components_ref() { return components_; }

  bool is_active() const {
    for (const Component& c : components_)
      if (c.is_active()) return true;
    return false;
  }

  template <class F>
  void for_each_leaf(F&& f) const {
    for (const Component& c : components_) f(c);
  }
  template <class F>
  void for_each_constant(F&&) const {}

  template <class Sink>
  AGGAD_INLINE void push_adjoint(const std::array<double, kArity>& bar, Sink&& sink) const {
    for (std::size_t i = 0; i < kArity; ++i) sink(components_[i], bar[i]);
  }

  template <class TangentOf>
  std::array<double, kArity> tangent(TangentOf&& tangent_of) const {
    std::array<double, kArity> out{};
    for (std::size_t i = 0; i < kArity; ++i) out[i] = tangent_of(components_[i]);
    return out;
  }

 private:
  template <class E>
  void assign(const E& e) {
    if (Tape* tape = TapeBinding<Tape>::active()) {
      tape->store_aggregate(components_, e);
    } else {
      const auto c = components(e.value());
      for (std::size_t i = 0; i < kArity; ++i) components_[i].value_ref() = c[i];
    }
  }

  void set_passive(const V& v) {
    const auto c = components(v);
    for (std::size_t i = 0; i < kArity; ++i) components_[i].value_ref() = c[i];
  }

  std::array<Component, kArity> components_{};
};

template <class Tape>
using ActiveComplex = AggregatedActive<Tape, std::complex<double>>;

}  // namespace aggad
