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
#include <map>

#include <gtest/gtest.h>

#include "aggad/aggad.hpp"

using namespace aggad;

namespace {

using Tape = JacobianLinearTape;
using Real = Tape::Real;
using Complex = Tape::Complex;
using Seed = std::map<Identifier, double>;

struct Fixture : ::testing::Test {
  Tape tape;
  Tape::Scope scope{tape};
};

}  // namespace

using RealExpressionTest = Fixture;

TEST_F(RealExpressionTest, FusedNormIsOneStatement) {
  Real u = 3.0, v = 4.0;
  tape.register_input(u);
  tape.register_input(v);
  auto e = sqrt(pow(u, 2) + pow(v, 2));
  static_assert(decltype(e)::kLeafCount == 2);
  Real w = e;
  EXPECT_EQ(w.value(), 5.0);
  EXPECT_EQ(tape.statement_count(), 1u);
  const TapeStatistics s = tape.statistics();
  EXPECT_EQ(s.jacobian_bytes, 16u);
  EXPECT_EQ(s.identifier_bytes, 8u);
}

TEST_F(RealExpressionTest, ForwardTangents) {
  Real u = 3.0, v = 5.0;
  tape.register_input(u);
  tape.register_input(v);
  EXPECT_EQ(forward_sweep_dot(u * v, Seed{{u.identifier(), 1.0}}), 5.0);
  EXPECT_EQ(forward_sweep_dot(u + v, Seed{{u.identifier(), 1.0}, {v.identifier(), 1.0}}), 2.0);
  Real a = 3.0, b = 4.0;
  tape.register_input(a);
  tape.register_input(b);
  EXPECT_DOUBLE_EQ(forward_sweep_dot(sqrt(a * a + b * b), Seed{{a.identifier(), 1.0}}), 0.6);
  // Missing seeds count as zero.
  EXPECT_EQ(forward_sweep_dot(u * v, Seed{}), 0.0);
}

TEST_F(RealExpressionTest, ProductRuleAndUnaryPlus) {
  Real u = 3.0, v = 5.0, x = 1.25;
  tape.register_input(u);
  tape.register_input(v);
  tape.register_input(x);
  Real w = u * v;
  Real p = +x;
  EXPECT_EQ(p.value(), 1.25);
  tape.gradient(w.identifier()) = 1.0;
  tape.gradient(p.identifier()) = 1.0;
  tape.evaluate();
  EXPECT_EQ(tape.gradient(u.identifier()), 5.0);
  EXPECT_EQ(tape.gradient(v.identifier()), 3.0);
  EXPECT_EQ(tape.gradient(x.identifier()), 1.0);
}

TEST_F(RealExpressionTest, ConstantFactorHasOneArgument) {
  Real a = 2.0;
  tape.register_input(a);
  Real w = 4.0 * a;
  EXPECT_EQ(tape.statement_count(), 1u);
  EXPECT_EQ(tape.statistics().jacobian_bytes, 8u);
  tape.gradient(w.identifier()) = 1.0;
  tape.evaluate();
  EXPECT_EQ(tape.gradient(a.identifier()), 4.0);
}

TEST_F(RealExpressionTest, PassiveRightHandSideRecordsNothing) {
  Real c1 = 1.0, c2 = 2.0;
  Real w = c1 + c2;
  EXPECT_EQ(w.value(), 3.0);
  EXPECT_FALSE(w.is_active());
  EXPECT_EQ(tape.statement_count(), 0u);
}

TEST_F(RealExpressionTest, RecordingOffMakesResultPassive) {
  Real u = 2.0;
  tape.register_input(u);
  tape.set_recording(false);
  Real w = u * u;
  tape.set_recording(true);
  EXPECT_EQ(w.value(), 4.0);
  EXPECT_FALSE(w.is_active());
  EXPECT_EQ(tape.statement_count(), 0u);
}

TEST_F(RealExpressionTest, RepeatedLeafIsRepeatedEntry) {
  Real u = 3.0;
  tape.register_input(u);
  Real w = u * u;
  EXPECT_EQ(tape.statistics().jacobian_bytes, 16u);
  tape.gradient(w.identifier()) = 1.0;
  tape.evaluate();
  EXPECT_EQ(tape.gradient(u.identifier()), 6.0);
}

using ComponentTest = Fixture;

TEST_F(ComponentTest, RealOfProduct) {
  Complex a(1.0, 2.0), b(3.0, 4.0);
  tape.register_input(a);
  tape.register_input(b);
  EXPECT_EQ((a * b).real().value(), -5.0);
  Complex c(3.0, 4.0);
  EXPECT_EQ(c.imag().value(), 4.0);

  Real r = real(a * b);
  tape.gradient(r.identifier()) = 1.0;
  tape.evaluate();
  EXPECT_EQ(tape.gradient(a.component(0).identifier()), 3.0);
  EXPECT_EQ(tape.gradient(a.component(1).identifier()), -4.0);
}

TEST(ComponentDeathTest, RuntimeIndexOutOfRangeAborts) {
  Tape tape;
  Tape::Scope scope(tape);
  Complex a(1.0, 2.0);
  EXPECT_DEATH(a.component(2), "component");
}
