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
#include <type_traits>

#include "aggad/active.hpp"
#include "aggad/operations.hpp"

namespace aggad::verify {

using std::atan2;
using std::cos;
using std::cosh;
using std::exp;
using std::log;
using std::sin;
using std::sinh;
using std::sqrt;

inline double primal_of(double x) { return x; }
template <Expression E>
double primal_of(const E& e) {
  return e.value();
}

/// A complex number stored as two independent scalars, with every operation
/// written in real arithmetic. Over active reals this is the baseline an AD
/// tool sees when complex numbers are not handled: each complex operation
/// becomes several real statements on the tape.
template <class S>
struct PairComplex {
  S re{};
  S im{};

  PairComplex() = default;
  PairComplex(S r, S i) : re(std::move(r)), im(std::move(i)) {}
  explicit PairComplex(const std::complex<double>& c) : re(c.real()), im(c.imag()) {}

  std::complex<double> value() const { return {primal_of(re), primal_of(im)}; }
};

template <class T>
inline constexpr bool kIsPair = false;
template <class S>
inline constexpr bool kIsPair<PairComplex<S>> = true;

/// Operands that mix with PairComplex<S> as reals: S itself, real
/// expressions over S, and plain numbers.
template <class R, class S>
concept PairReal = !kIsPair<std::remove_cvref_t<R>> && !std::is_same_v<std::remove_cvref_t<R>, std::complex<double>> &&
                   std::is_convertible_v<const R&, S>;

template <class S>
PairComplex<S> operator+(const PairComplex<S>& a) {
  return {a.re, a.im};
}
template <class S>
PairComplex<S> operator-(const PairComplex<S>& a) {
  return {-a.re, -a.im};
}

template <class S>
PairComplex<S> operator+(const PairComplex<S>& a, const PairComplex<S>& b) {
  return {a.re + b.re, a.im + b.im};
}
template <class S>
PairComplex<S> operator-(const PairComplex<S>& a, const PairComplex<S>& b) {
  return {a.re - b.re, a.im - b.im};
}
template <class S>
PairComplex<S> operator*(const PairComplex<S>& a, const PairComplex<S>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class S>
PairComplex<S> operator/(const PairComplex<S>& a, const PairComplex<S>& b) {
  const S den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

template <class S, PairReal<S> R>
PairComplex<S> operator+(const PairComplex<S>& a, const R& b) {
  return {a.re + b, a.im};
}
template <class S, PairReal<S> R>
PairComplex<S> operator+(const R& a, const PairComplex<S>& b) {
  return {a + b.re, b.im};
}
template <class S, PairReal<S> R>
PairComplex<S> operator-(const PairComplex<S>& a, const R& b) {
  return {a.re - b, a.im};
}
template <class S, PairReal<S> R>
PairComplex<S> operator-(const R& a, const PairComplex<S>& b) {
  return {a - b.re, -b.im};
}
template <class S, PairReal<S> R>
PairComplex<S> operator*(const PairComplex<S>& a, const R& b) {
  return {a.re * b, a.im * b};
}
template <class S, PairReal<S> R>
PairComplex<S> operator*(const R& a, const PairComplex<S>& b) {
  return {a * b.re, a * b.im};
}
template <class S, PairReal<S> R>
PairComplex<S> operator/(const PairComplex<S>& a, const R& b) {
  return {a.re / b, a.im / b};
}
template <class S, PairReal<S> R>
PairComplex<S> operator/(const R& a, const PairComplex<S>& b) {
  const S den = b.re * b.re + b.im * b.im;
  return {a * b.re / den, -(a * b.im) / den};
}

// Complex literals are promoted to passive pairs.
#define AGGAD_PAIR_LITERAL_OP(op)                                                         \
  template <class S>                                                                      \
  PairComplex<S> operator op(const PairComplex<S>& a, const std::complex<double>& b) {    \
    return a op PairComplex<S>(b);                                                        \
  }                                                                                       \
  template <class S>                                                                      \
  PairComplex<S> operator op(const std::complex<double>& a, const PairComplex<S>& b) {    \
    return PairComplex<S>(a) op b;                                                        \
  }
AGGAD_PAIR_LITERAL_OP(+)
AGGAD_PAIR_LITERAL_OP(-)
AGGAD_PAIR_LITERAL_OP(*)
AGGAD_PAIR_LITERAL_OP(/)
#undef AGGAD_PAIR_LITERAL_OP

template <class S>
S real(const PairComplex<S>& z) {
  return z.re;
}
template <class S>
S imag(const PairComplex<S>& z) {
  return z.im;
}
template <class S>
S norm(const PairComplex<S>& z) {
  return z.re * z.re + z.im * z.im;
}
template <class S>
S abs(const PairComplex<S>& z) {
  return sqrt(z.re * z.re + z.im * z.im);
}
template <class S>
S arg(const PairComplex<S>& z) {
  return atan2(z.im, z.re);
}
template <class S>
PairComplex<S> conj(const PairComplex<S>& z) {
  return {z.re, -z.im};
}
/// Identity for finite values, which are the only ones the pair type sees.
template <class S>
PairComplex<S> proj(const PairComplex<S>& z) {
  return {z.re, z.im};
}

template <class S>
PairComplex<S> exp(const PairComplex<S>& z) {
  const S e = exp(z.re);
  return {e * cos(z.im), e * sin(z.im)};
}
template <class S>
PairComplex<S> log(const PairComplex<S>& z) {
  return {log(sqrt(z.re * z.re + z.im * z.im)), atan2(z.im, z.re)};
}
template <class S>
PairComplex<S> log10(const PairComplex<S>& z) {
  return log(z) / std::numbers::ln10;
}
/// Principal square root. The branch is chosen on primal values so that the
/// formula used never divides by a vanishing root.
template <class S>
PairComplex<S> sqrt(const PairComplex<S>& z) {
  const S r = sqrt(z.re * z.re + z.im * z.im);
  if (primal_of(z.re) >= 0.0) {
    const S t = sqrt((r + z.re) * 0.5);
    return {t, z.im / (2.0 * t)};
  }
  const S t = sqrt((r - z.re) * 0.5);
  if (primal_of(z.im) >= 0.0) return {z.im / (2.0 * t), t};
  return {-z.im / (2.0 * t), -t};
}
template <class S>
PairComplex<S> sin(const PairComplex<S>& z) {
  return {sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im)};
}
template <class S>
PairComplex<S> cos(const PairComplex<S>& z) {
  return {cos(z.re) * cosh(z.im), -(sin(z.re) * sinh(z.im))};
}
template <class S>
PairComplex<S> tan(const PairComplex<S>& z) {
  const S den = cos(2.0 * z.re) + cosh(2.0 * z.im);
  return {sin(2.0 * z.re) / den, sinh(2.0 * z.im) / den};
}
template <class S>
PairComplex<S> sinh(const PairComplex<S>& z) {
  return {sinh(z.re) * cos(z.im), cosh(z.re) * sin(z.im)};
}
template <class S>
PairComplex<S> cosh(const PairComplex<S>& z) {
  return {cosh(z.re) * cos(z.im), sinh(z.re) * sin(z.im)};
}
template <class S>
PairComplex<S> tanh(const PairComplex<S>& z) {
  const S den = cosh(2.0 * z.re) + cos(2.0 * z.im);
  return {sinh(2.0 * z.re) / den, sin(2.0 * z.im) / den};
}

template <class S>
PairComplex<S> times_i(const PairComplex<S>& z) {
  return {-z.im, z.re};
}

template <class S>
PairComplex<S> asin(const PairComplex<S>& z) {
  // -i log(iz + sqrt(1 - z^2))
  const PairComplex<S> l = log(times_i(z) + sqrt(1.0 - z * z));
  return {l.im, -l.re};
}
template <class S>
PairComplex<S> acos(const PairComplex<S>& z) {
  const PairComplex<S> a = asin(z);
  return {std::numbers::pi / 2 - a.re, -a.im};
}
template <class S>
PairComplex<S> atan(const PairComplex<S>& z) {
  // (i/2) (log(1 - iz) - log(1 + iz))
  const PairComplex<S> iz = times_i(z);
  const PairComplex<S> d = log(1.0 - iz) - log(1.0 + iz);
  return {-d.im * 0.5, d.re * 0.5};
}
template <class S>
PairComplex<S> asinh(const PairComplex<S>& z) {
  return log(z + sqrt(z * z + 1.0));
}
template <class S>
PairComplex<S> acosh(const PairComplex<S>& z) {
  return log(z + sqrt(z + 1.0) * sqrt(z - 1.0));
}
template <class S>
PairComplex<S> atanh(const PairComplex<S>& z) {
  return (log(1.0 + z) - log(1.0 - z)) * 0.5;
}

template <class S>
PairComplex<S> pow(const PairComplex<S>& a, const PairComplex<S>& b) {
  return exp(b * log(a));
}
template <class S, PairReal<S> R>
PairComplex<S> pow(const PairComplex<S>& a, const R& b) {
  return exp(b * log(a));
}
template <class S, PairReal<S> R>
PairComplex<S> pow(const R& a, const PairComplex<S>& b) {
  return exp(b * log(PairComplex<S>(S(a), S(0.0))));
}
template <class S>
PairComplex<S> pow(const PairComplex<S>& a, const std::complex<double>& b) {
  return pow(a, PairComplex<S>(b));
}
template <class S>
PairComplex<S> pow(const std::complex<double>& a, const PairComplex<S>& b) {
  return pow(PairComplex<S>(a), b);
}

template <class S, PairReal<S> R, PairReal<S> T>
PairComplex<S> pair_polar(const R& r, const T& theta) {
  return {r * cos(theta), r * sin(theta)};
}

}  // namespace aggad::verify
