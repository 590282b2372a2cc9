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

#include <cmath>
#include <complex>
#include <numbers>
#include <string_view>
#include <array>

#include "aggad/expression.hpp"

// Elemental operations. The same operation struct serves real and complex
// arguments wherever the derivative is a plain scalar (real or holomorphic);
// the non-holomorphic complex operations spell out their real Jacobian blocks.

namespace aggad {

namespace ops {

using std::acos;
using std::acosh;
using std::asin;
using std::asinh;
using std::atan;
using std::atanh;
using std::cos;
using std::cosh;
using std::exp;
using std::log;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tan;
using std::tanh;

inline constexpr double kLn10 = std::numbers::ln10;

// --- binary ---------------------------------------------------------------

struct Add : ScalarDerivativeOp<Add> {
  template <class A, class B>
  static auto eval(const A& a, const B& b) { return a + b; }
  template <std::size_t I, class W, class A, class B>
  static double derivative(const W&, const A&, const B&) { return 1.0; }
};

struct Sub : ScalarDerivativeOp<Sub> {
  template <class A, class B>
  static auto eval(const A& a, const B& b) { return a - b; }
  template <std::size_t I, class W, class A, class B>
  static double derivative(const W&, const A&, const B&) { return I == 0 ? 1.0 : -1.0; }
};

struct Mul : ScalarDerivativeOp<Mul> {
  template <class A, class B>
  static auto eval(const A& a, const B& b) { return a * b; }
  template <std::size_t I, class W, class A, class B>
  static auto derivative(const W&, const A& a, const B& b) {
    if constexpr (I == 0) return b; else return a;
  }
};

struct Div : ScalarDerivativeOp<Div> {
  template <class A, class B>
  static auto eval(const A& a, const B& b) { return a / b; }
  template <std::size_t I, class W, class A, class B>
  static W derivative(const W& w, const A&, const B& b) {
    if constexpr (I == 0) return 1.0 / b; else return -w / b;
  }
};

/// Complex power is exp(b log a) on the principal branch, with 0^b = 0.
struct Pow : ScalarDerivativeOp<Pow> {
  static double eval(double a, double b) { return std::pow(a, b); }
  static std::complex<double> eval(const std::complex<double>& a, const std::complex<double>& b) {
    if (a == 0.0) return 0.0;
    return std::exp(b * std::log(a));
  }
  template <std::size_t I>
  static double derivative(double w, double a, double b) {
    if constexpr (I == 0) return b * std::pow(a, b - 1.0); else return std::log(a) * w;
  }
  template <std::size_t I>
  static std::complex<double> derivative(const std::complex<double>& w, const std::complex<double>& a,
                                         const std::complex<double>& b) {
    if constexpr (I == 0) return b * w / a; else return w * std::log(a);
  }
};

struct Atan2 : ScalarDerivativeOp<Atan2> {
  static double eval(double y, double x) { return std::atan2(y, x); }
  template <std::size_t I>
  static double derivative(double, double y, double x) {
    const double r2 = x * x + y * y;
    if constexpr (I == 0) return x / r2; else return -y / r2;
  }
};

/// Ties select the first argument.
struct Min : ScalarDerivativeOp<Min> {
  static double eval(double a, double b) { return b < a ? b : a; }
  template <std::size_t I>
  static double derivative(double, double a, double b) {
    const bool second = b < a;
    return (I == 1) == second ? 1.0 : 0.0;
  }
};

struct Max : ScalarDerivativeOp<Max> {
  static double eval(double a, double b) { return a < b ? b : a; }
  template <std::size_t I>
  static double derivative(double, double a, double b) {
    const bool second = a < b;
    return (I == 1) == second ? 1.0 : 0.0;
  }
};

// --- unary with scalar derivative -----------------------------------------

#define AGGAD_UNARY_OP(Name, value_expr, derivative_expr)          \
  struct Name : ScalarDerivativeOp<Name> {                         \
    template <class A>                                             \
    static auto eval(const A& a) { return value_expr; }            \
    template <std::size_t I, class W, class A>                     \
    static W derivative(const W& w, const A& a) {                  \
      (void)w;                                                     \
      (void)a;                                                     \
      return derivative_expr;                                      \
    }                                                              \
  };

AGGAD_UNARY_OP(Neg, -a, W(-1.0))
AGGAD_UNARY_OP(Pos, +a, W(1.0))
AGGAD_UNARY_OP(Sqrt, sqrt(a), 0.5 / w)
AGGAD_UNARY_OP(Exp, exp(a), w)
AGGAD_UNARY_OP(Log, log(a), 1.0 / a)
AGGAD_UNARY_OP(Log10, log(a) / kLn10, 1.0 / (a * kLn10))
AGGAD_UNARY_OP(Sin, sin(a), cos(a))
AGGAD_UNARY_OP(Cos, cos(a), -sin(a))
AGGAD_UNARY_OP(Tan, tan(a), 1.0 + w * w)
AGGAD_UNARY_OP(Asin, asin(a), 1.0 / sqrt(1.0 - a * a))
AGGAD_UNARY_OP(Acos, acos(a), -1.0 / sqrt(1.0 - a * a))
AGGAD_UNARY_OP(Atan, atan(a), 1.0 / (1.0 + a * a))
AGGAD_UNARY_OP(Sinh, sinh(a), cosh(a))
AGGAD_UNARY_OP(Cosh, cosh(a), sinh(a))
AGGAD_UNARY_OP(Tanh, tanh(a), 1.0 - w * w)
AGGAD_UNARY_OP(Asinh, asinh(a), 1.0 / sqrt(a * a + 1.0))
AGGAD_UNARY_OP(Acosh, acosh(a), 1.0 / (sqrt(a - 1.0) * sqrt(a + 1.0)))
AGGAD_UNARY_OP(Atanh, atanh(a), 1.0 / (1.0 - a * a))

#undef AGGAD_UNARY_OP

/// Real absolute value; the derivative at 0 is taken as 0.
struct Abs : ScalarDerivativeOp<Abs> {
  static double eval(double a) { return std::abs(a); }
  template <std::size_t I>
  static double derivative(double, double a) { return a > 0.0 ? 1.0 : (a < 0.0 ? -1.0 : 0.0); }
};

// --- complex operations with explicit real blocks --------------------------

struct Conj {
  static std::complex<double> primal(const std::complex<double>& z) { return std::conj(z); }
  template <std::size_t I, std::size_t Rows, std::size_t Cols, class W>
  static Block<2, 2> block(const W&, const std::complex<double>&) { return {{{1.0, 0.0}, {0.0, -1.0}}}; }
};

/// Identity for finite values; not differentiated at infinity.
struct Proj {
  static std::complex<double> primal(const std::complex<double>& z) { return std::proj(z); }
  template <std::size_t I, std::size_t Rows, std::size_t Cols, class W>
  static Block<2, 2> block(const W&, const std::complex<double>&) { return {{{1.0, 0.0}, {0.0, 1.0}}}; }
};

/// |z|, with partials (x, y) / |z| and 0 at z = 0.
struct ComplexAbs {
  static double primal(const std::complex<double>& z) { return std::abs(z); }
  template <std::size_t I, std::size_t Rows, std::size_t Cols>
  static Block<1, 2> block(double w, const std::complex<double>& z) {
    if (w == 0.0) return {};
    return {{{z.real() / w, z.imag() / w}}};
  }
};

/// arg z = atan2(y, x), with partials (-y, x) / |z|^2 and 0 at z = 0.
struct Arg {
  static double primal(const std::complex<double>& z) { return std::arg(z); }
  template <std::size_t I, std::size_t Rows, std::size_t Cols>
  static Block<1, 2> block(double, const std::complex<double>& z) {
    const double r2 = z.real() * z.real() + z.imag() * z.imag();
    if (r2 == 0.0) return {};
    return {{{-z.imag() / r2, z.real() / r2}}};
  }
};

struct Norm {
  static double primal(const std::complex<double>& z) { return std::norm(z); }
  template <std::size_t I, std::size_t Rows, std::size_t Cols>
  static Block<1, 2> block(double, const std::complex<double>& z) {
    return {{{2.0 * z.real(), 2.0 * z.imag()}}};
  }
};

/// polar(r, theta) = (r cos theta, r sin theta).
struct Polar {
  static std::complex<double> primal(double r, double theta) { return {r * std::cos(theta), r * std::sin(theta)}; }
  template <std::size_t I, std::size_t Rows, std::size_t Cols, class W>
  static Block<2, 1> block(const W&, double r, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    if constexpr (I == 0) return {{{c}, {s}}};
    else return {{{-r * s}, {r * c}}};
  }
};

}  // namespace ops

// ---------------------------------------------------------------------------
// Overloads
// ---------------------------------------------------------------------------

template <class A, class B>
concept BinaryOperands = (Expression<A> || Expression<B>) && Operand<A> && Operand<B>;

template <class A, class B>
concept RealOperands = BinaryOperands<A, B> && (RealExpression<A> || PassiveReal<A>) &&
                       (RealExpression<B> || PassiveReal<B>);

template <class A, class B>
  requires BinaryOperands<A, B>
auto operator+(const A& a, const B& b) { return make_node<ops::Add>(a, b); }

template <class A, class B>
  requires BinaryOperands<A, B>
auto operator-(const A& a, const B& b) { return make_node<ops::Sub>(a, b); }

template <class A, class B>
  requires BinaryOperands<A, B>
auto operator*(const A& a, const B& b) { return make_node<ops::Mul>(a, b); }

template <class A, class B>
  requires BinaryOperands<A, B>
auto operator/(const A& a, const B& b) { return make_node<ops::Div>(a, b); }

template <class A, class B>
  requires BinaryOperands<A, B>
auto pow(const A& a, const B& b) { return make_node<ops::Pow>(a, b); }

template <class A, class B>
  requires RealOperands<A, B>
auto atan2(const A& y, const B& x) { return make_node<ops::Atan2>(y, x); }

template <class A, class B>
  requires RealOperands<A, B>
auto min(const A& a, const B& b) { return make_node<ops::Min>(a, b); }

template <class A, class B>
  requires RealOperands<A, B>
auto max(const A& a, const B& b) { return make_node<ops::Max>(a, b); }

template <class A, class B>
  requires RealOperands<A, B>
auto polar(const A& r, const B& theta) { return make_node<ops::Polar>(r, theta); }

template <Expression E>
auto operator-(const E& e) { return make_node<ops::Neg>(e); }

template <Expression E>
auto operator+(const E& e) { return make_node<ops::Pos>(e); }

#define AGGAD_UNARY_FUNCTION(name, Op) \
  template <Expression E>              \
  auto name(const E& e) {              \
    return make_node<ops::Op>(e);      \
  }

AGGAD_UNARY_FUNCTION(sqrt, Sqrt)
AGGAD_UNARY_FUNCTION(exp, Exp)
AGGAD_UNARY_FUNCTION(log, Log)
AGGAD_UNARY_FUNCTION(log10, Log10)
AGGAD_UNARY_FUNCTION(sin, Sin)
AGGAD_UNARY_FUNCTION(cos, Cos)
AGGAD_UNARY_FUNCTION(tan, Tan)
AGGAD_UNARY_FUNCTION(asin, Asin)
AGGAD_UNARY_FUNCTION(acos, Acos)
AGGAD_UNARY_FUNCTION(atan, Atan)
AGGAD_UNARY_FUNCTION(sinh, Sinh)
AGGAD_UNARY_FUNCTION(cosh, Cosh)
AGGAD_UNARY_FUNCTION(tanh, Tanh)
AGGAD_UNARY_FUNCTION(asinh, Asinh)
AGGAD_UNARY_FUNCTION(acosh, Acosh)
AGGAD_UNARY_FUNCTION(atanh, Atanh)

#undef AGGAD_UNARY_FUNCTION

template <RealExpression E>
auto abs(const E& e) { return make_node<ops::Abs>(e); }

template <ComplexExpression E>
auto abs(const E& e) { return make_node<ops::ComplexAbs>(e); }

template <ComplexExpression E>
auto arg(const E& e) { return make_node<ops::Arg>(e); }

template <ComplexExpression E>
auto norm(const E& e) { return make_node<ops::Norm>(e); }

template <ComplexExpression E>
auto conj(const E& e) { return make_node<ops::Conj>(e); }

template <ComplexExpression E>
auto proj(const E& e) { return make_node<ops::Proj>(e); }

template <ComplexExpression E>
auto real(const E& e) { return extract_component<0>(e); }

template <ComplexExpression E>
auto imag(const E& e) { return extract_component<1>(e); }

/// Real-to-complex construction C(re, im).
template <class R, class I>
  requires RealOperands<R, I>
auto make_complex(const R& re, const I& im) { return construct<std::complex<double>>(re, im); }

template <RealExpression R>
auto make_complex(const R& re) { return construct<std::complex<double>>(re, 0.0); }

// Comparisons act on primal values.

template <class T>
auto primal_value(const T& t) {
  if constexpr (Expression<T>) return t.value(); else return t;
}

#define AGGAD_COMPARISON(op)                                           \
  template <class A, class B>                                         \
    requires RealOperands<A, B>                                       \
  bool operator op(const A& a, const B& b) {                          \
    return primal_value(a) op primal_value(b);                        \
  }

AGGAD_COMPARISON(<)
AGGAD_COMPARISON(<=)
AGGAD_COMPARISON(>)
AGGAD_COMPARISON(>=)
AGGAD_COMPARISON(==)
AGGAD_COMPARISON(!=)

#undef AGGAD_COMPARISON

// Names of every elemental operation, per value type. The gradient sweep
// checks that it covers each of them.

inline constexpr std::array<std::string_view, 27> kRealOperationNames = {
    "add",  "sub",  "mul",   "div",   "pow",  "atan2", "min",  "max",   "neg",
    "pos",  "sqrt", "exp",   "log",   "log10", "sin",  "cos",  "tan",   "asin",
    "acos", "atan", "sinh",  "cosh",  "tanh", "asinh", "acosh", "atanh", "abs"};

inline constexpr std::array<std::string_view, 33> kComplexOperationNames = {
    "add",  "sub",   "mul",   "div",  "pow",   "neg",  "pos",  "sqrt", "exp",  "log",         "log10",
    "sin",  "cos",   "tan",   "asin", "acos",  "atan", "sinh", "cosh", "tanh", "asinh",       "acosh",
    "atanh", "abs",  "arg",   "norm", "conj",  "proj", "real", "imag", "polar", "make_complex", "construct_real"};

}  // namespace aggad
