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

#include <complex>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "aggad/aggad.hpp"
#include "aggad/verify/pair_complex.hpp"

using namespace aggad;
using cd = std::complex<double>;

namespace {

using Tape = JacobianLinearTape;
using Real = Tape::Real;
using Complex = Tape::Complex;

// Statement stream bytes: 5 per statement plus 12 per stored entry.
std::uint64_t stream_bytes(const Tape& t) { return t.statistics().tape_bytes(); }

struct JacobianTapeTest : ::testing::Test {
  Tape tape;
  Tape::Scope scope{tape};
};

}  // namespace

TEST_F(JacobianTapeTest, RealNormStores29Bytes) {
  Real u = 3.0, v = 4.0;
  tape.register_input(u);
  tape.register_input(v);
  Real w = sqrt(pow(u, 2) + pow(v, 2));
  EXPECT_EQ(stream_bytes(tape), 1u + 4u + 2u * 12u);
  const TapeStatistics s = tape.statistics();
  EXPECT_EQ(s.statement_bytes, 5u);
  EXPECT_EQ(s.jacobian_bytes, 16u);
  EXPECT_EQ(s.identifier_bytes, 8u);
  EXPECT_EQ(s.adjoint_bytes, 8u * (w.identifier() + 1u));
}

TEST_F(JacobianTapeTest, ZeroPartialIsSuppressed) {
  Real u = 3.0, v = 4.0;
  tape.register_input(u);
  tape.register_input(v);
  Real w = u + 0.0 * v;
  EXPECT_EQ(stream_bytes(tape), 17u);
}

TEST_F(JacobianTapeTest, PassiveValueOverActiveLhsStoresEmptyStatement) {
  Real u = 3.0;
  tape.register_input(u);
  Real w = 2.0 * u;
  const std::uint64_t before = stream_bytes(tape);
  w = 7.0 + Real(1.0);
  EXPECT_EQ(stream_bytes(tape) - before, 5u);
}

TEST_F(JacobianTapeTest, ComplexSumStores58Bytes) {
  Complex a(1.0, 2.0), b(3.0, -1.0);
  tape.register_input(a);
  tape.register_input(b);
  Complex w = a + b;
  EXPECT_EQ(tape.statement_count(), 2u);
  EXPECT_EQ(stream_bytes(tape), 58u);
}

TEST_F(JacobianTapeTest, FusedComplexNormStores106Bytes) {
  Complex u(1.0, 2.0), v(3.0, 0.5);
  tape.register_input(u);
  tape.register_input(v);
  Complex w = sqrt(pow(u, 2.0) + pow(v, 2.0));
  EXPECT_EQ(tape.statement_count(), 2u);
  EXPECT_EQ(stream_bytes(tape), 2u * (1u + 4u + 4u * 12u));
  EXPECT_EQ(stream_bytes(tape), 106u);
}

TEST_F(JacobianTapeTest, SplitComplexNormStores232Bytes) {
  Complex u(1.0, 2.0), v(3.0, 0.5);
  tape.register_input(u);
  tape.register_input(v);
  Complex t1 = pow(u, 2.0);
  Complex t2 = pow(v, 2.0);
  Complex t3 = t1 + t2;
  Complex w = sqrt(t3);
  EXPECT_EQ(tape.statement_count(), 8u);
  EXPECT_EQ(stream_bytes(tape), 232u);
}

TEST_F(JacobianTapeTest, FusedTanhStores58Bytes) {
  Complex z(0.5, 0.5);
  tape.register_input(z);
  Complex w = tanh(z);
  EXPECT_EQ(stream_bytes(tape), 58u);
}

TEST_F(JacobianTapeTest, DecomposedTanhStoresMore) {
  verify::PairComplex<Real> z(Real(0.5), Real(0.5));
  tape.register_input(z.re);
  tape.register_input(z.im);
  verify::PairComplex<Real> w = tanh(z);
  EXPECT_GT(stream_bytes(tape), 58u);
  EXPECT_NEAR(std::abs(w.value() - std::tanh(cd(0.5, 0.5))), 0.0, 1e-15);
}

TEST_F(JacobianTapeTest, TooManyArgumentsThrows) {
  std::vector<Real> x(16);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = 1.0 + static_cast<double>(i);
    tape.register_input(x[i]);
  }
  // 16 x 16 leaves in one statement.
  auto row = [&](std::size_t i) {
    return x[i] * x[0] + x[i] * x[1] + x[i] * x[2] + x[i] * x[3] + x[i] * x[4] + x[i] * x[5] + x[i] * x[6] +
           x[i] * x[7];
  };
  Real ok = row(0) + row(1) + row(2) + row(3) + row(4) + row(5) + row(6) + row(7);
  EXPECT_TRUE(ok.is_active());
  Real w;
  EXPECT_THROW(w = row(0) + row(1) + row(2) + row(3) + row(4) + row(5) + row(6) + row(7) + row(8) + row(9) +
                   row(10) + row(11) + row(12) + row(13) + row(14) + row(15),
               std::length_error);
}

TEST_F(JacobianTapeTest, StatementCountsForAggregates) {
  Complex a(1.0, 2.0);
  Real r = 0.5;
  tape.register_input(a);
  tape.register_input(r);
  Complex w = a * r;
  Real s = abs(w);
  EXPECT_EQ(tape.statement_count(), 3u);
  EXPECT_EQ(tape.statistics().aggregate_statements, 2u);
}

TEST(JacobianTapeManagers, LinearAndReuseAgreeBitwise) {
  auto run = [](auto& tape) {
    using T = std::remove_reference_t<decltype(tape)>;
    typename T::Scope scope(tape);
    typename T::Complex z(0.3, -0.7);
    typename T::Real x = 1.25;
    tape.register_input(z);
    tape.register_input(x);
    typename T::Complex c = z;
    for (int i = 0; i < 10; ++i) {
      c = 0.5 * sin(c) * x + exp(c / 4.0) / 4.0;
      c *= z;
    }
    typename T::Real y = norm(c) + x * x;
    tape.gradient(y.identifier()) = 1.0;
    tape.evaluate();
    return std::vector<double>{tape.gradient(z.component(0).identifier()),
                               tape.gradient(z.component(1).identifier()), tape.gradient(x.identifier())};
  };
  JacobianLinearTape linear;
  JacobianReuseTape reuse;
  EXPECT_EQ(run(linear), run(reuse));
}
