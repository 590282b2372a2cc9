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
#include <cstddef>
#include <tuple>
#include <type_traits>
#include <utility>

#include "aggad/config.hpp"

namespace aggad {

// ---------------------------------------------------------------------------
// Aggregated value traits
// ---------------------------------------------------------------------------

/// Describes a value type as a vector of n reals: component access and array
/// construction. Both maps are the identity embedding, so their adjoints are
/// plain transposes (copy back component-wise).
template <class V>
struct AggregateTraits;

template <>
struct AggregateTraits<double> {
  static constexpr std::size_t kSize = 1;
  static double get(double v, std::size_t) { return v; }
  static double make(const std::array<double, 1>& c) { return c[0]; }
};

template <>
struct AggregateTraits<std::complex<double>> {
  static constexpr std::size_t kSize = 2;
  static double get(const std::complex<double>& v, std::size_t i) { return i == 0 ? v.real() : v.imag(); }
  static std::complex<double> make(const std::array<double, 2>& c) { return {c[0], c[1]}; }
};

template <class V>
inline constexpr std::size_t kSizeOf = AggregateTraits<V>::kSize;

template <class T>
inline constexpr bool kIsComplex = false;
template <>
inline constexpr bool kIsComplex<std::complex<double>> = true;

template <class V>
std::array<double, kSizeOf<V>> components(const V& v) {
  std::array<double, kSizeOf<V>> out{};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = AggregateTraits<V>::get(v, i);
  return out;
}

// ---------------------------------------------------------------------------
// Real Jacobian blocks
// ---------------------------------------------------------------------------

template <std::size_t Rows, std::size_t Cols>
using Block = std::array<std::array<double, Cols>, Rows>;

/// bar_in = block^T * bar_out. Rows whose seed is zero are skipped.
template <std::size_t Rows, std::size_t Cols>
AGGAD_INLINE std::array<double, Cols> transpose_apply(const Block<Rows, Cols>& block, const std::array<double, Rows>& bar) {
  std::array<double, Cols> out{};
  for (std::size_t r = 0; r < Rows; ++r) {
    if (bar[r] == 0.0) continue;
    for (std::size_t c = 0; c < Cols; ++c) out[c] += block[r][c] * bar[r];
  }
  return out;
}

template <std::size_t Rows, std::size_t Cols>
AGGAD_INLINE void apply_add(const Block<Rows, Cols>& block, const std::array<double, Cols>& dot, std::array<double, Rows>& out) {
  for (std::size_t r = 0; r < Rows; ++r)
    for (std::size_t c = 0; c < Cols; ++c) out[r] += block[r][c] * dot[c];
}

/// Real block of a scalar derivative. A complex derivative x + iy acting on a
/// complex argument is [[x, -y], [y, x]]; acting on a real argument (embedded
/// as (a, 0)) only the first column survives, which yields the real-part
/// projection of the conjugate-transposed update in reverse mode.
template <std::size_t Rows, std::size_t Cols>
AGGAD_INLINE Block<Rows, Cols> to_block(const std::complex<double>& d) {
  static_assert(Rows == 2 && (Cols == 1 || Cols == 2));
  Block<Rows, Cols> b{};
  b[0][0] = d.real();
  b[1][0] = d.imag();
  if constexpr (Cols == 2) {
    b[0][1] = -d.imag();
    b[1][1] = d.real();
  }
  return b;
}

template <std::size_t Rows, std::size_t Cols>
AGGAD_INLINE Block<Rows, Cols> to_block(double d) {
  if constexpr (Rows == 1 && Cols == 1)
    return {{{d}}};
  else
    return to_block<Rows, Cols>(std::complex<double>(d, 0.0));
}

// ---------------------------------------------------------------------------
// Expression interface
// ---------------------------------------------------------------------------

struct ExpressionTag {};

/// Extension point: specialize for a value type to give every expression with
/// that result type extra member functions (complex adds real() and imag()).
template <class Value, class Impl>
struct ExpressionMembers {};

template <class Impl, class V>
struct ExpressionBase : ExpressionTag, ExpressionMembers<V, Impl> {
  using Value = V;
  static constexpr std::size_t kArity = kSizeOf<V>;
  static constexpr bool kIsVariable = false;
  static constexpr bool kIsConstant = false;

  const Impl& cast() const { return static_cast<const Impl&>(*this); }
};

template <class T>
concept Expression = std::is_base_of_v<ExpressionTag, std::remove_cvref_t<T>>;

template <class T>
concept RealExpression = Expression<T> && std::remove_cvref_t<T>::kArity == 1;

template <class T>
concept ComplexExpression =
    Expression<T> && std::is_same_v<typename std::remove_cvref_t<T>::Value, std::complex<double>>;

template <class T>
concept PassiveReal = std::is_arithmetic_v<std::remove_cvref_t<T>>;

template <class T>
concept PassiveValue = PassiveReal<T> || std::is_same_v<std::remove_cvref_t<T>, std::complex<double>>;

template <class T>
concept Operand = Expression<T> || PassiveValue<T>;

/// Variables are held by reference inside expression trees; every other node
/// is held by value.
template <class T>
using StoredT = std::conditional_t<T::kIsVariable, const T&, T>;

// ---------------------------------------------------------------------------
// Constant leaf
// ---------------------------------------------------------------------------

/// A literal passive value inside an expression (the 4.0 in 4.0 * a).
template <class V>
class Constant : public ExpressionBase<Constant<V>, V> {
 public:
  static constexpr bool kIsConstant = true;
  static constexpr std::size_t kLeafCount = 0;
  static constexpr std::size_t kConstantCount = kSizeOf<V>;
  static constexpr std::size_t kArity = kSizeOf<V>;

  explicit Constant(const V& v) : value_(v) {}

  V value() const { return value_; }

  template <class F>
  void for_each_leaf(F&&) const {}

  template <class F>
  void for_each_constant(F&& f) const {
    for (double c : components(value_)) f(c);
  }

  template <class Sink>
  void push_adjoint(const std::array<double, kArity>&, Sink&&) const {}

  template <class TangentOf>
  std::array<double, kArity> tangent(TangentOf&&) const {
    return {};
  }

 private:
  V value_;
};

template <class T>
struct NodeOf {
  using type = std::remove_cvref_t<T>;
};
template <PassiveReal T>
struct NodeOf<T> {
  using type = Constant<double>;
};
template <>
struct NodeOf<std::complex<double>> {
  using type = Constant<std::complex<double>>;
};
template <class T>
using NodeT = typename NodeOf<std::remove_cvref_t<T>>::type;

template <class T>
decltype(auto) as_node(const T& t) {
  if constexpr (Expression<T>)
    return (t);
  else
    return NodeT<T>(static_cast<typename NodeT<T>::Value>(t));
}

// ---------------------------------------------------------------------------
// Operation node
// ---------------------------------------------------------------------------

namespace detail {
template <class... V>
inline constexpr bool kAnyComplex = (kIsComplex<std::remove_cvref_t<V>> || ...);

/// Promotes every argument to complex when at least one of them is complex.
template <bool ToComplex, class V>
auto promote(const V& v) {
  if constexpr (ToComplex)
    return std::complex<double>(v);
  else
    return v;
}
}  // namespace detail

/// Lazy operation node. The primal value is computed once at construction;
/// partial derivatives are evaluated by Op on demand, as real blocks of size
/// (result arity) x (argument arity).
template <class Op, class... Args>
class Compute
    : public ExpressionBase<Compute<Op, Args...>, decltype(Op::primal(std::declval<typename Args::Value>()...))> {
  using Base = ExpressionBase<Compute<Op, Args...>, decltype(Op::primal(std::declval<typename Args::Value>()...))>;

 public:
  using Value = typename Base::Value;
  static constexpr std::size_t kArity = Base::kArity;
  static constexpr std::size_t kLeafCount = (Args::kLeafCount + ... + 0);
  static constexpr std::size_t kConstantCount = (Args::kConstantCount + ... + 0);
  using Operation = Op;

  template <class... A>
  explicit Compute(std::in_place_t, A&&... args)
      : args_(std::forward<A>(args)...),
        value_(std::apply([](const auto&... a) { return Op::primal(a.value()...); }, args_)) {}

  const Value& value() const { return value_; }

  template <std::size_t I>
  const auto& arg() const {
    return std::get<I>(args_);
  }

  template <class F>
  void for_each_leaf(F&& f) const {
    std::apply([&](const auto&... a) { (a.for_each_leaf(f), ...); }, args_);
  }

  template <class F>
  void for_each_constant(F&& f) const {
    std::apply([&](const auto&... a) { (a.for_each_constant(f), ...); }, args_);
  }

  /// Propagates an adjoint seed of this node down to the leaves; sink(leaf,
  /// partial) receives the accumulated contribution for every leaf occurrence.
  template <class Sink>
  AGGAD_INLINE void push_adjoint(const std::array<double, kArity>& bar, Sink&& sink) const {
    push_children(bar, sink, std::index_sequence_for<Args...>{});
  }

  /// Forward directional derivative; tangent_of(leaf) supplies leaf tangents.
  template <class TangentOf>
  std::array<double, kArity> tangent(TangentOf&& tangent_of) const {
    std::array<double, kArity> out{};
    tangent_children(tangent_of, out, std::index_sequence_for<Args...>{});
    return out;
  }

  template <std::size_t I>
  AGGAD_INLINE auto block() const {
    using Child = std::tuple_element_t<I, std::tuple<Args...>>;
    return std::apply(
        [&](const auto&... a) { return Op::template block<I, kArity, Child::kArity>(value_, a.value()...); },
        args_);
  }

 private:
  template <class Sink, std::size_t... I>
  AGGAD_INLINE void push_children(const std::array<double, kArity>& bar, Sink& sink, std::index_sequence<I...>) const {
    (push_child<I>(bar, sink), ...);
  }

  template <std::size_t I, class Sink>
  AGGAD_INLINE void push_child(const std::array<double, kArity>& bar, Sink& sink) const {
    using Child = std::tuple_element_t<I, std::tuple<Args...>>;
    if constexpr (!Child::kIsConstant) std::get<I>(args_).push_adjoint(transpose_apply(block<I>(), bar), sink);
  }

  template <class TangentOf, std::size_t... I>
  void tangent_children(TangentOf& t, std::array<double, kArity>& out, std::index_sequence<I...>) const {
    (tangent_child<I>(t, out), ...);
  }

  template <std::size_t I, class TangentOf>
  void tangent_child(TangentOf& t, std::array<double, kArity>& out) const {
    using Child = std::tuple_element_t<I, std::tuple<Args...>>;
    if constexpr (!Child::kIsConstant) apply_add(block<I>(), std::get<I>(args_).tangent(t), out);
  }

  std::tuple<StoredT<Args>...> args_;
  Value value_;
};

template <class Op, class... A>
auto make_node(const A&... args) {
  return Compute<Op, NodeT<A>...>(std::in_place, as_node(args)...);
}

// ---------------------------------------------------------------------------
// Operation helpers
// ---------------------------------------------------------------------------

/// Base for operations with a scalar (real or complex) derivative per
/// argument. When any argument is complex, all arguments are promoted before
/// evaluating the value and the derivative, so mixed overloads share the exact
/// arithmetic of the purely complex ones.
template <class Derived>
struct ScalarDerivativeOp {
  template <class... V>
  AGGAD_INLINE static auto primal(const V&... v) {
    constexpr bool c = detail::kAnyComplex<V...>;
    return Derived::eval(detail::promote<c>(v)...);
  }

  template <std::size_t I, std::size_t Rows, std::size_t Cols, class W, class... V>
  AGGAD_INLINE static Block<Rows, Cols> block(const W& w, const V&... v) {
    constexpr bool c = detail::kAnyComplex<V...>;
    return to_block<Rows, Cols>(Derived::template derivative<I>(w, detail::promote<c>(v)...));
  }
};

/// Selects component K of an aggregated expression.
template <std::size_t K>
struct ComponentOp {
  template <class V>
  static double primal(const V& v) {
    static_assert(K < kSizeOf<V>, "component index out of range");
    return AggregateTraits<V>::get(v, K);
  }
  template <std::size_t I, std::size_t Rows, std::size_t Cols, class W, class V>
  static Block<Rows, Cols> block(const W&, const V&) {
    Block<Rows, Cols> b{};
    b[0][K] = 1.0;
    return b;
  }
};

/// Array construction C(v_1, ..., v_n) of an aggregated value from reals.
template <class V>
struct ConstructOp {
  template <class... R>
  static V primal(const R&... r) {
    static_assert(sizeof...(R) == kSizeOf<V>);
    return AggregateTraits<V>::make({static_cast<double>(r)...});
  }
  template <std::size_t I, std::size_t Rows, std::size_t Cols, class W, class... R>
  static Block<Rows, Cols> block(const W&, const R&...) {
    Block<Rows, Cols> b{};
    b[I][0] = 1.0;
    return b;
  }
};

/// Extracts component K of an aggregated expression as a scalar expression.
template <std::size_t K, Expression E>
auto extract_component(const E& e) {
  static_assert(K < std::remove_cvref_t<E>::kArity, "component index out of range");
  return make_node<ComponentOp<K>>(e);
}

/// Builds an aggregate of value type V from kSizeOf<V> real operands.
template <class V, class... R>
  requires(sizeof...(R) == kSizeOf<V> && ((RealExpression<R> || PassiveReal<R>) && ...))
auto construct(const R&... r) {
  return make_node<ConstructOp<V>>(r...);
}

// ---------------------------------------------------------------------------
// Member injection for complex-valued expressions
// ---------------------------------------------------------------------------

template <class Impl>
struct ExpressionMembers<std::complex<double>, Impl> {
  auto real() const { return extract_component<0>(static_cast<const Impl&>(*this)); }
  auto imag() const { return extract_component<1>(static_cast<const Impl&>(*this)); }
};

// ---------------------------------------------------------------------------
// Forward tangent of a single expression
// ---------------------------------------------------------------------------

/// Tangent of an expression given leaf tangents; unseeded leaves count as 0.
template <Expression E, class SeedMap>
auto forward_sweep_dot(const E& e, const SeedMap& seed) {
  auto t = e.tangent([&](const auto& leaf) -> double {
    auto it = seed.find(leaf.identifier());
    return it == seed.end() ? 0.0 : it->second;
  });
  using V = typename std::remove_cvref_t<E>::Value;
  return AggregateTraits<V>::make(t);
}

}  // namespace aggad
