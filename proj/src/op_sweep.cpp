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

#include "aggad/verify/op_sweep.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <span>
#include <tuple>
#include <utility>

#include "aggad/aggad.hpp"
#include "aggad/verify/forward_tape.hpp"
#include "aggad/verify/pair_complex.hpp"

namespace aggad::verify {

namespace {

// ---------------------------------------------------------------------------
// Value families: the same generic operation body is instantiated with
// passive numbers (finite differences), forward tangents, handled complex
// numbers on a Jacobian tape, and decomposed complex numbers on a Jacobian
// tape.
// ---------------------------------------------------------------------------

struct R {};  // real input
struct C {};  // complex input

template <class Kind>
inline constexpr std::size_t kWidth = std::is_same_v<Kind, C> ? 2 : 1;

struct PassiveFamily {
  using Real = double;
  using Complex = std::complex<double>;
  static Complex polar(double r, double t) { return std::polar(r, t); }
  static Complex make_complex(double a, double b) { return {a, b}; }
  static Complex make_complex(double a) { return {a, 0.0}; }
};

template <class Tape>
struct HandledFamily {
  using TapeType = Tape;
  using Real = ActiveReal<Tape>;
  using Complex = ActiveComplex<Tape>;
  template <class A, class B>
  static auto polar(const A& r, const B& t) {
    return aggad::polar(r, t);
  }
  template <class A, class B>
  static auto make_complex(const A& a, const B& b) {
    return aggad::make_complex(a, b);
  }
  template <class A>
  static auto make_complex(const A& a) {
    return aggad::make_complex(a);
  }
};

template <class Tape>
struct DecomposedFamily {
  using TapeType = Tape;
  using Real = ActiveReal<Tape>;
  using Complex = PairComplex<Real>;
  template <class A, class B>
  static Complex polar(const A& r, const B& t) {
    return pair_polar<Real>(r, t);
  }
  template <class A, class B>
  static Complex make_complex(const A& a, const B& b) {
    return {Real(a), Real(b)};
  }
  template <class A>
  static Complex make_complex(const A& a) {
    return {Real(a), Real(0.0)};
  }
};

template <class Family, class Kind, bool Promote>
auto make_arg(const double* x) {
  if constexpr (std::is_same_v<Kind, C>)
    return typename Family::Complex(x[0], x[1]);
  else if constexpr (Promote)
    return typename Family::Complex(x[0], 0.0);
  else
    return typename Family::Real(x[0]);
}

// Registration of inputs; `ids` receives the identifiers in input layout,
// with only the real part of promoted reals.
template <class Tape>
void register_arg(Tape& tape, ActiveReal<Tape>& a, bool, std::vector<Identifier>& ids) {
  tape.register_input(a);
  ids.push_back(a.identifier());
}
template <class Tape>
void register_arg(Tape& tape, ActiveComplex<Tape>& a, bool promoted, std::vector<Identifier>& ids) {
  tape.register_input(a);
  ids.push_back(a.component(0).identifier());
  if (!promoted) ids.push_back(a.component(1).identifier());
}
template <class Tape>
void register_arg(Tape& tape, PairComplex<ActiveReal<Tape>>& a, bool promoted, std::vector<Identifier>& ids) {
  register_arg(tape, a.re, false, ids);
  if (promoted) {
    tape.register_input(a.im);
  } else {
    register_arg(tape, a.im, false, ids);
  }
}

template <class Tape>
void output_ids(const ActiveReal<Tape>& y, std::vector<Identifier>& ids, std::vector<double>& values) {
  ids.push_back(y.identifier());
  values.push_back(y.value());
}
template <class Tape>
void output_ids(const ActiveComplex<Tape>& y, std::vector<Identifier>& ids, std::vector<double>& values) {
  output_ids(y.component(0), ids, values);
  output_ids(y.component(1), ids, values);
}
template <class Tape>
void output_ids(const PairComplex<ActiveReal<Tape>>& y, std::vector<Identifier>& ids, std::vector<double>& values) {
  output_ids(y.re, ids, values);
  output_ids(y.im, ids, values);
}

template <class Out, class Family>
using OutputOf = std::conditional_t<std::is_same_v<Out, C>, typename Family::Complex, typename Family::Real>;

template <class... In>
constexpr std::array<std::size_t, sizeof...(In)> offsets() {
  std::array<std::size_t, sizeof...(In)> out{};
  std::size_t at = 0;
  std::size_t i = 0;
  ((out[i++] = at, at += kWidth<In>), ...);
  return out;
}

template <class Out, class... In, class F, std::size_t... I>
std::vector<double> eval_passive(const F& f, std::span<const double> x, std::index_sequence<I...>) {
  constexpr auto off = offsets<In...>();
  std::tuple<decltype(make_arg<PassiveFamily, In, false>(nullptr))...> args{
      make_arg<PassiveFamily, In, false>(x.data() + off[I])...};
  const OutputOf<Out, PassiveFamily> y = f(PassiveFamily{}, std::get<I>(args)...);
  if constexpr (std::is_same_v<Out, C>)
    return {y.real(), y.imag()};
  else
    return {y};
}

struct TapeRun {
  std::vector<double> y;
  std::vector<double> derivative;  // ydot (forward) or xbar (reverse)
};

/// Records f on a fresh tape of the family, then either reads output
/// tangents (forward tape, seeded with `direction` on inputs) or reverses
/// with `direction` as output adjoint seed.
template <class Family, bool Promote, class Out, class... In, class F, std::size_t... I>
TapeRun eval_tape(const F& f, std::span<const double> x, std::span<const double> direction,
                  std::index_sequence<I...>) {
  using Tape = typename Family::TapeType;
  constexpr bool kForward = std::is_same_v<Tape, ForwardTape>;
  constexpr auto off = offsets<In...>();
  Tape tape;
  typename Tape::Scope scope(tape);
  std::tuple<decltype(make_arg<Family, In, Promote>(nullptr))...> args{
      make_arg<Family, In, Promote>(x.data() + off[I])...};
  std::vector<Identifier> in_ids;
  (register_arg(tape, std::get<I>(args), Promote && std::is_same_v<In, R>, in_ids), ...);
  if constexpr (kForward)
    for (std::size_t i = 0; i < in_ids.size(); ++i) tape.tangent(in_ids[i]) = direction[i];

  const OutputOf<Out, Family> y = f(Family{}, std::get<I>(args)...);
  std::vector<Identifier> out_ids;
  TapeRun run;
  output_ids(y, out_ids, run.y);
  if constexpr (kForward) {
    for (Identifier id : out_ids) run.derivative.push_back(static_cast<const ForwardTape&>(tape).tangent(id));
  } else {
    // Outputs can share an identifier only if both are passive.
    for (std::size_t k = 0; k < out_ids.size(); ++k)
      if (out_ids[k] != kPassiveIdentifier) tape.gradient(out_ids[k]) += direction[k];
    tape.evaluate();
    for (Identifier id : in_ids) run.derivative.push_back(tape.gradient(id));
  }
  return run;
}

// ---------------------------------------------------------------------------
// Operation registry
// ---------------------------------------------------------------------------

/// Sampling box of one input. Reals: uniform in [lo, hi], optionally with a
/// random sign. Complex: modulus in [lo, hi], argument in [arg_lo, arg_hi].
struct Domain {
  bool complex = false;
  double lo = -2.0;
  double hi = 2.0;
  double arg_lo = -3.0;
  double arg_hi = 3.0;
  bool random_sign = false;
};

Domain interval(double lo, double hi) { return {false, lo, hi, 0.0, 0.0, false}; }
Domain away_from_zero(double lo, double hi) { return {false, lo, hi, 0.0, 0.0, true}; }
Domain cplx(double lo, double hi, double arg_lo = -3.0, double arg_hi = 3.0) {
  return {true, lo, hi, arg_lo, arg_hi, false};
}

const Domain kReal = interval(-2.0, 2.0);
const Domain kPositive = interval(0.5, 2.0);
const Domain kNonzero = away_from_zero(0.5, 2.0);
const Domain kComplex = cplx(0.3, 1.5);
const Domain kCutSafe = cplx(0.5, 2.0, -2.8, 2.8);  // log, sqrt, pow base
const Domain kUnitDisk = cplx(0.1, 0.7);           // inverse trigonometric

struct SweepOp {
  std::string name;
  std::vector<Domain> domains;
  bool complex = false;  // involves complex values
  bool mixed = false;    // has real inputs next to complex values
  std::function<std::vector<double>(std::span<const double>)> passive;
  std::function<TapeRun(std::span<const double>, std::span<const double>)> forward;
  std::function<TapeRun(std::span<const double>, std::span<const double>)> reverse;
  std::function<TapeRun(std::span<const double>, std::span<const double>)> decomposed;
  std::function<TapeRun(std::span<const double>, std::span<const double>)> promoted;
};

template <class K>
inline constexpr bool kIsC = std::is_same_v<K, C>;

/// Which comparisons apply beyond FD and dot product: kAuto compares shapes
/// with a complex input against the decomposed pair type and checks the
/// projection rule on shapes with both complex and real inputs.
enum Extra { kAuto, kOn, kOff };

class Registry {
 public:
  template <class Out, class... In, class F>
  void add(std::string name, std::vector<Domain> domains, F f) {
    add_with<kAuto, kAuto, Out, In...>(std::move(name), std::move(domains), f);
  }

  template <Extra Decompose, Extra Promote, class Out, class... In, class F>
  void add_with(std::string name, std::vector<Domain> domains, F f) {
    using Seq = std::index_sequence_for<In...>;
    using Jacobian = JacobianLinearTape;
    SweepOp op;
    op.name = std::move(name);
    op.domains = std::move(domains);
    constexpr bool kAnyComplexInput = (kIsC<In> || ...);
    constexpr bool kAnyRealInput = (!kIsC<In> || ...);
    op.complex = kIsC<Out> || kAnyComplexInput;
    constexpr bool kPromote = Promote == kAuto ? kAnyComplexInput && kAnyRealInput : Promote == kOn;
    constexpr bool kDecompose = Decompose == kAuto ? kAnyComplexInput : Decompose == kOn;
    op.mixed = kPromote;
    op.passive = [f](std::span<const double> x) { return eval_passive<Out, In...>(f, x, Seq{}); };
    op.forward = [f](std::span<const double> x, std::span<const double> d) {
      return eval_tape<HandledFamily<ForwardTape>, false, Out, In...>(f, x, d, Seq{});
    };
    op.reverse = [f](std::span<const double> x, std::span<const double> d) {
      return eval_tape<HandledFamily<Jacobian>, false, Out, In...>(f, x, d, Seq{});
    };
    if constexpr (kDecompose)
      op.decomposed = [f](std::span<const double> x, std::span<const double> d) {
        return eval_tape<DecomposedFamily<Jacobian>, false, Out, In...>(f, x, d, Seq{});
      };
    if constexpr (kPromote)
      op.promoted = [f](std::span<const double> x, std::span<const double> d) {
        return eval_tape<HandledFamily<Jacobian>, true, Out, In...>(f, x, d, Seq{});
      };
    ops_.push_back(std::move(op));
  }

  const std::vector<SweepOp>& ops() const { return ops_; }

 private:
  std::vector<SweepOp> ops_;
};

// Operation bodies. Every body takes the family first; only construction and
// polar need it, since the other names resolve through overloading.
namespace bodies {

using std::abs;
using std::acos;
using std::acosh;
using std::arg;
using std::asin;
using std::asinh;
using std::atan;
using std::atan2;
using std::atanh;
using std::conj;
using std::cos;
using std::cosh;
using std::exp;
using std::imag;
using std::log;
using std::log10;
using std::norm;
using std::pow;
using std::proj;
using std::real;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tan;
using std::tanh;

// std::min and std::max would also match active arguments and bypass the
// recorded operation, so passive numbers get their own overloads.
inline double min(double a, double b) { return a < b ? a : b; }
inline double max(double a, double b) { return a < b ? b : a; }

const std::complex<double> kLiteral(0.75, -1.25);

#define AGGAD_UNARY_BODY(fn) [](auto, const auto& a) { return fn(a); }
#define AGGAD_BINARY_BODY(fn) [](auto, const auto& a, const auto& b) { return fn(a, b); }
#define AGGAD_OPERATOR_BODY(op) [](auto, const auto& a, const auto& b) { return a op b; }

void register_real(Registry& r) {
  r.add<R, R>("neg(r)", {kReal}, [](auto, const auto& a) { return -a; });
  r.add<R, R>("pos(r)", {kReal}, [](auto, const auto& a) { return +a; });
  r.add<R, R>("sqrt(r)", {kPositive}, AGGAD_UNARY_BODY(sqrt));
  r.add<R, R>("exp(r)", {kReal}, AGGAD_UNARY_BODY(exp));
  r.add<R, R>("log(r)", {kPositive}, AGGAD_UNARY_BODY(log));
  r.add<R, R>("log10(r)", {kPositive}, AGGAD_UNARY_BODY(log10));
  r.add<R, R>("sin(r)", {kReal}, AGGAD_UNARY_BODY(sin));
  r.add<R, R>("cos(r)", {kReal}, AGGAD_UNARY_BODY(cos));
  r.add<R, R>("tan(r)", {interval(-1.2, 1.2)}, AGGAD_UNARY_BODY(tan));
  r.add<R, R>("asin(r)", {interval(-0.8, 0.8)}, AGGAD_UNARY_BODY(asin));
  r.add<R, R>("acos(r)", {interval(-0.8, 0.8)}, AGGAD_UNARY_BODY(acos));
  r.add<R, R>("atan(r)", {kReal}, AGGAD_UNARY_BODY(atan));
  r.add<R, R>("sinh(r)", {kReal}, AGGAD_UNARY_BODY(sinh));
  r.add<R, R>("cosh(r)", {kReal}, AGGAD_UNARY_BODY(cosh));
  r.add<R, R>("tanh(r)", {kReal}, AGGAD_UNARY_BODY(tanh));
  r.add<R, R>("asinh(r)", {kReal}, AGGAD_UNARY_BODY(asinh));
  r.add<R, R>("acosh(r)", {interval(1.2, 3.0)}, AGGAD_UNARY_BODY(acosh));
  r.add<R, R>("atanh(r)", {interval(-0.8, 0.8)}, AGGAD_UNARY_BODY(atanh));
  r.add<R, R>("abs(r)", {away_from_zero(0.1, 2.0)}, AGGAD_UNARY_BODY(abs));

  r.add<R, R, R>("add(r,r)", {kReal, kReal}, AGGAD_OPERATOR_BODY(+));
  r.add<R, R, R>("sub(r,r)", {kReal, kReal}, AGGAD_OPERATOR_BODY(-));
  r.add<R, R, R>("mul(r,r)", {kReal, kReal}, AGGAD_OPERATOR_BODY(*));
  r.add<R, R, R>("div(r,r)", {kReal, kNonzero}, AGGAD_OPERATOR_BODY(/));
  r.add<R, R, R>("pow(r,r)", {kPositive, kReal}, AGGAD_BINARY_BODY(pow));
  r.add<R, R, R>("atan2(r,r)", {away_from_zero(0.3, 2.0), kReal}, AGGAD_BINARY_BODY(atan2));
  r.add<R, R, R>("min(r,r)", {kReal, kReal}, AGGAD_BINARY_BODY(min));
  r.add<R, R, R>("max(r,r)", {kReal, kReal}, AGGAD_BINARY_BODY(max));

  r.add<R, R>("add(r,d)", {kReal}, [](auto, const auto& a) { return a + 1.5; });
  r.add<R, R>("add(d,r)", {kReal}, [](auto, const auto& a) { return 1.5 + a; });
  r.add<R, R>("sub(r,d)", {kReal}, [](auto, const auto& a) { return a - 1.5; });
  r.add<R, R>("sub(d,r)", {kReal}, [](auto, const auto& a) { return 1.5 - a; });
  r.add<R, R>("mul(r,d)", {kReal}, [](auto, const auto& a) { return a * 1.5; });
  r.add<R, R>("mul(d,r)", {kReal}, [](auto, const auto& a) { return 1.5 * a; });
  r.add<R, R>("div(r,d)", {kReal}, [](auto, const auto& a) { return a / 1.5; });
  r.add<R, R>("div(d,r)", {kNonzero}, [](auto, const auto& a) { return 1.5 / a; });
  r.add<R, R>("pow(r,d)", {kPositive}, [](auto, const auto& a) { return pow(a, 2.5); });
  r.add<R, R>("pow(d,r)", {kReal}, [](auto, const auto& a) { return pow(1.5, a); });
  r.add<R, R>("atan2(r,d)", {kReal}, [](auto, const auto& a) { return atan2(a, 1.5); });
  r.add<R, R>("atan2(d,r)", {kReal}, [](auto, const auto& a) { return atan2(1.5, a); });
  r.add<R, R>("min(r,d)", {kReal}, [](auto, const auto& a) { return min(a, 0.25); });
  r.add<R, R>("max(d,r)", {kReal}, [](auto, const auto& a) { return max(0.25, a); });
}

void register_complex(Registry& r) {
  r.add<C, C>("neg(c)", {kComplex}, [](auto, const auto& a) { return -a; });
  r.add<C, C>("pos(c)", {kComplex}, [](auto, const auto& a) { return +a; });
  r.add<C, C>("sqrt(c)", {kCutSafe}, AGGAD_UNARY_BODY(sqrt));
  r.add<C, C>("exp(c)", {kComplex}, AGGAD_UNARY_BODY(exp));
  r.add<C, C>("log(c)", {kCutSafe}, AGGAD_UNARY_BODY(log));
  r.add<C, C>("log10(c)", {kCutSafe}, AGGAD_UNARY_BODY(log10));
  r.add<C, C>("sin(c)", {kComplex}, AGGAD_UNARY_BODY(sin));
  r.add<C, C>("cos(c)", {kComplex}, AGGAD_UNARY_BODY(cos));
  r.add<C, C>("tan(c)", {cplx(0.1, 1.0)}, AGGAD_UNARY_BODY(tan));
  r.add<C, C>("asin(c)", {kUnitDisk}, AGGAD_UNARY_BODY(asin));
  r.add<C, C>("acos(c)", {kUnitDisk}, AGGAD_UNARY_BODY(acos));
  r.add<C, C>("atan(c)", {kUnitDisk}, AGGAD_UNARY_BODY(atan));
  r.add<C, C>("sinh(c)", {kComplex}, AGGAD_UNARY_BODY(sinh));
  r.add<C, C>("cosh(c)", {kComplex}, AGGAD_UNARY_BODY(cosh));
  r.add<C, C>("tanh(c)", {cplx(0.1, 1.0)}, AGGAD_UNARY_BODY(tanh));
  r.add<C, C>("asinh(c)", {kUnitDisk}, AGGAD_UNARY_BODY(asinh));
  r.add<C, C>("acosh(c)", {cplx(1.5, 2.5, -1.0, 1.0)}, AGGAD_UNARY_BODY(acosh));
  r.add<C, C>("atanh(c)", {kUnitDisk}, AGGAD_UNARY_BODY(atanh));
  r.add<C, C>("conj(c)", {kComplex}, AGGAD_UNARY_BODY(conj));
  r.add<C, C>("proj(c)", {kComplex}, AGGAD_UNARY_BODY(proj));
  r.add<R, C>("abs(c)", {kComplex}, AGGAD_UNARY_BODY(abs));
  r.add<R, C>("arg(c)", {kCutSafe}, AGGAD_UNARY_BODY(arg));
  r.add<R, C>("norm(c)", {kComplex}, AGGAD_UNARY_BODY(norm));
  r.add<R, C>("real(c)", {kComplex}, AGGAD_UNARY_BODY(real));
  r.add<R, C>("imag(c)", {kComplex}, AGGAD_UNARY_BODY(imag));

  r.add<C, C, C>("add(c,c)", {kComplex, kComplex}, AGGAD_OPERATOR_BODY(+));
  r.add<C, C, C>("sub(c,c)", {kComplex, kComplex}, AGGAD_OPERATOR_BODY(-));
  r.add<C, C, C>("mul(c,c)", {kComplex, kComplex}, AGGAD_OPERATOR_BODY(*));
  r.add<C, C, C>("div(c,c)", {kComplex, kComplex}, AGGAD_OPERATOR_BODY(/));
  r.add<C, C, C>("pow(c,c)", {kCutSafe, kComplex}, AGGAD_BINARY_BODY(pow));

  r.add<C, C, R>("add(c,r)", {kComplex, kReal}, AGGAD_OPERATOR_BODY(+));
  r.add<C, R, C>("add(r,c)", {kReal, kComplex}, AGGAD_OPERATOR_BODY(+));
  r.add<C, C, R>("sub(c,r)", {kComplex, kReal}, AGGAD_OPERATOR_BODY(-));
  r.add<C, R, C>("sub(r,c)", {kReal, kComplex}, AGGAD_OPERATOR_BODY(-));
  r.add<C, C, R>("mul(c,r)", {kComplex, kReal}, AGGAD_OPERATOR_BODY(*));
  r.add<C, R, C>("mul(r,c)", {kReal, kComplex}, AGGAD_OPERATOR_BODY(*));
  r.add<C, C, R>("div(c,r)", {kComplex, kNonzero}, AGGAD_OPERATOR_BODY(/));
  r.add<C, R, C>("div(r,c)", {kReal, kComplex}, AGGAD_OPERATOR_BODY(/));
  r.add<C, C, R>("pow(c,r)", {kCutSafe, kReal}, AGGAD_BINARY_BODY(pow));
  r.add<C, R, C>("pow(r,c)", {kPositive, kComplex}, AGGAD_BINARY_BODY(pow));

  r.add<C, C>("add(c,k)", {kComplex}, [](auto, const auto& a) { return a + kLiteral; });
  r.add<C, C>("add(k,c)", {kComplex}, [](auto, const auto& a) { return kLiteral + a; });
  r.add<C, C>("sub(c,k)", {kComplex}, [](auto, const auto& a) { return a - kLiteral; });
  r.add<C, C>("sub(k,c)", {kComplex}, [](auto, const auto& a) { return kLiteral - a; });
  r.add<C, C>("mul(c,k)", {kComplex}, [](auto, const auto& a) { return a * kLiteral; });
  r.add<C, C>("mul(k,c)", {kComplex}, [](auto, const auto& a) { return kLiteral * a; });
  r.add<C, C>("div(c,k)", {kComplex}, [](auto, const auto& a) { return a / kLiteral; });
  r.add<C, C>("div(k,c)", {kComplex}, [](auto, const auto& a) { return kLiteral / a; });
  r.add<C, C>("pow(c,k)", {kCutSafe}, [](auto, const auto& a) { return pow(a, kLiteral); });
  r.add<C, C>("pow(k,c)", {kComplex}, [](auto, const auto& a) { return pow(kLiteral, a); });
  r.add<C, C>("add(c,d)", {kComplex}, [](auto, const auto& a) { return a + 1.5; });
  r.add<C, C>("sub(d,c)", {kComplex}, [](auto, const auto& a) { return 1.5 - a; });
  r.add<C, C>("mul(d,c)", {kComplex}, [](auto, const auto& a) { return 1.5 * a; });
  r.add<C, C>("div(c,d)", {kComplex}, [](auto, const auto& a) { return a / 1.5; });
  r.add<C, C>("div(d,c)", {kComplex}, [](auto, const auto& a) { return 1.5 / a; });
  r.add<C, C>("pow(c,d)", {kCutSafe}, [](auto, const auto& a) { return pow(a, 2.5); });
  // A complex literal with a real operand never meets the pair type.
  r.add_with<kOff, kOn, C, R>("mul(k,r)", {kReal}, [](auto, const auto& a) { return kLiteral * a; });
  r.add_with<kOff, kOn, C, R>("div(r,k)", {kReal}, [](auto, const auto& a) { return a / kLiteral; });

  // Constructors take reals only; their decomposed forms come from the family.
  r.add_with<kOn, kOff, C, R, R>("make_complex(r,r)", {kReal, kReal}, [](auto family, const auto& a, const auto& b) {
    return family.make_complex(a, b);
  });
  r.add_with<kOn, kOff, C, R>("construct_real(r)", {kReal},
                              [](auto family, const auto& a) { return family.make_complex(a); });
  r.add_with<kOn, kOff, C, R, R>("polar(r,r)", {kPositive, kReal},
                                 [](auto family, const auto& a, const auto& b) { return family.polar(a, b); });
}

#undef AGGAD_UNARY_BODY
#undef AGGAD_BINARY_BODY
#undef AGGAD_OPERATOR_BODY

}  // namespace bodies

const Registry& registry() {
  static const Registry r = [] {
    Registry out;
    bodies::register_real(out);
    bodies::register_complex(out);
    return out;
  }();
  return r;
}

std::vector<double> sample(const std::vector<Domain>& domains, std::mt19937_64& rng) {
  std::vector<double> x;
  for (const Domain& d : domains) {
    std::uniform_real_distribution<double> mag(d.lo, d.hi);
    if (d.complex) {
      const double r = mag(rng);
      const double t = std::uniform_real_distribution<double>(d.arg_lo, d.arg_hi)(rng);
      x.push_back(r * std::cos(t));
      x.push_back(r * std::sin(t));
    } else {
      double v = mag(rng);
      if (d.random_sign && std::bernoulli_distribution(0.5)(rng)) v = -v;
      x.push_back(v);
    }
  }
  return x;
}

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& e : v) e = u(rng);
  return v;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

}  // namespace

const char* to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::kFiniteDifference: return "fd";
    case CheckKind::kDotProduct: return "dot";
    case CheckKind::kDecomposed: return "decomposed";
    case CheckKind::kProjection: return "projection";
  }
  return "?";
}

std::vector<std::string> sweep_operation_names() {
  std::vector<std::string> names;
  for (const SweepOp& op : registry().ops()) names.push_back(op.name);
  return names;
}

CheckReport op_sweep(const SweepOptions& options) {
  CheckReport report;
  std::mt19937_64 rng(options.seed);
  for (const SweepOp& op : registry().ops()) {
    for (std::size_t p = 0; p < options.points; ++p) {
      const std::vector<double> x = sample(op.domains, rng);
      const std::vector<double> xdot = random_vector(x.size(), rng);
      const TapeRun fwd = op.forward(x, xdot);
      const std::vector<double> ybar = random_vector(fwd.y.size(), rng);

      auto entry = [&](CheckKind kind) {
        CheckEntry e;
        e.op = op.name;
        e.kind = kind;
        e.point = x;
        return e;
      };

      {
        CheckEntry e = entry(CheckKind::kFiniteDifference);
        e.tolerance = options.fd.tolerance;
        const std::vector<double> fd = fd_directional(op.passive, x, xdot, options.fd);
        if (fd.empty()) {
          e.outcome = Outcome::kInconclusive;
        } else {
          e.analytic = max_abs(fwd.derivative);
          e.oracle = max_abs(fd);
          e.error = relative_error(fwd.derivative, fd);
          e.outcome = e.error <= e.tolerance ? Outcome::kPass : Outcome::kFail;
        }
        report.entries.push_back(std::move(e));
      }

      const TapeRun rev = op.reverse(x, ybar);
      {
        CheckEntry e = entry(CheckKind::kDotProduct);
        e.tolerance = options.dot_tolerance;
        const DotProductResult d = dot_product_test(xdot, fwd.derivative, rev.derivative, ybar, e.tolerance);
        e.analytic = d.reverse;
        e.oracle = d.forward;
        e.error = d.error;
        e.outcome = d.pass ? Outcome::kPass : Outcome::kFail;
        report.entries.push_back(std::move(e));
      }

      if (op.decomposed) {
        const TapeRun dec = op.decomposed(x, ybar);
        CheckEntry e = entry(CheckKind::kDecomposed);
        e.tolerance = options.decomposed_tolerance;
        e.analytic = max_abs(rev.derivative);
        e.oracle = max_abs(dec.derivative);
        e.error = std::max(relative_error(rev.y, dec.y), relative_error(rev.derivative, dec.derivative));
        e.outcome = e.error <= e.tolerance ? Outcome::kPass : Outcome::kFail;
        report.entries.push_back(std::move(e));
      }

      if (op.promoted) {
        const TapeRun pro = op.promoted(x, ybar);
        CheckEntry e = entry(CheckKind::kProjection);
        e.tolerance = 0.0;
        e.analytic = max_abs(rev.derivative);
        e.oracle = max_abs(pro.derivative);
        e.error = relative_error(rev.derivative, pro.derivative);
        e.outcome = rev.derivative == pro.derivative ? Outcome::kPass : Outcome::kFail;
        report.entries.push_back(std::move(e));
      }
    }
  }
  return report;
}

std::size_t CheckReport::points(const std::string& op, CheckKind kind) const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [&](const CheckEntry& e) {
    return e.op == op && e.kind == kind && e.outcome != Outcome::kInconclusive;
  }));
}

nlohmann::json CheckReport::to_json() const {
  nlohmann::json out;
  out["passed"] = passed();
  out["pass"] = count(Outcome::kPass);
  out["fail"] = count(Outcome::kFail);
  out["inconclusive"] = count(Outcome::kInconclusive);
  nlohmann::json list = nlohmann::json::array();
  for (const CheckEntry& e : entries) {
    list.push_back({{"op", e.op},
                    {"check", to_string(e.kind)},
                    {"point", e.point},
                    {"analytic", e.analytic},
                    {"oracle", e.oracle},
                    {"relative_error", e.error},
                    {"tolerance", e.tolerance},
                    {"outcome", e.outcome == Outcome::kPass   ? "pass"
                                : e.outcome == Outcome::kFail ? "fail"
                                                              : "inconclusive"}});
  }
  out["entries"] = std::move(list);
  return out;
}

std::string CheckReport::to_text() const {
  std::string out;
  std::vector<std::string> order;
  for (const CheckEntry& e : entries)
    if (order.empty() || order.back() != e.op) order.push_back(e.op);
  for (const std::string& op : order) {
    std::size_t checks = 0;
    std::size_t fails = 0;
    double worst = 0.0;
    for (const CheckEntry& e : entries) {
      if (e.op != op) continue;
      ++checks;
      if (e.outcome == Outcome::kFail) ++fails;
      if (e.kind != CheckKind::kFiniteDifference) worst = std::max(worst, e.error);
    }
    char line[160];
    std::snprintf(line, sizeof line, "%-20s %3zu checks  %s  max AD-vs-AD error %.2e\n", op.c_str(), checks,
                  fails == 0 ? "ok  " : "FAIL", worst);
    out += line;
  }
  for (const CheckEntry& e : entries) {
    if (e.outcome != Outcome::kFail) continue;
    char line[200];
    std::snprintf(line, sizeof line, "  failed %s %s: analytic %.17g oracle %.17g error %.3e > %.1e\n", e.op.c_str(),
                  to_string(e.kind), e.analytic, e.oracle, e.error, e.tolerance);
    out += line;
  }
  return out;
}

}  // namespace aggad::verify
