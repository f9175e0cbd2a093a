// Copyright 2026 The MIRAGE Transpiler Authors
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

#include "mirage/simverify.hpp"

#include <gtest/gtest.h>

#include "mirage/errors.hpp"
#include "oracles.hpp"

using namespace mirage;

TEST(Simverify, GhzMatchesKroneckerProduct) {
  CircuitDag dag(3);
  dag.add(GateNode::named("h", {0}));
  dag.add(GateNode::named("cx", {0, 1}));
  dag.add(GateNode::named("cx", {1, 2}));
  const MatX u = simulate(dag);
  const double s = 1.0 / std::sqrt(2.0);
  const Mat2 h = (Mat2() << s, s, s, -s).finished();
  const MatX id2 = MatX::Identity(2, 2);
  const MatX h0 = oracle::kron(id2, oracle::kron(id2, h));
  // CX with control 0, target 1 in big-endian order: target is the middle factor.
  const MatX p0 = (Mat2() << 1, 0, 0, 0).finished();
  const MatX p1 = (Mat2() << 0, 0, 0, 1).finished();
  const MatX x = oracle::pauli_x();
  const MatX cx01 = oracle::kron(id2, oracle::kron(id2, p0)) + oracle::kron(id2, oracle::kron(x, p1));
  const MatX cx12 = oracle::kron(id2, oracle::kron(p0, id2)) + oracle::kron(x, oracle::kron(p1, id2));
  EXPECT_LT((u - cx12 * cx01 * h0).cwiseAbs().maxCoeff(), 1e-12);
  const Eigen::VectorXcd psi = u.col(0);
  EXPECT_NEAR(std::abs(psi(0)), s, 1e-12);
  EXPECT_NEAR(std::abs(psi(7)), s, 1e-12);
}

TEST(Simverify, RandomCircuitsMatchEmbedding) {
  Rng rng = make_rng(3);
  for (int t = 0; t < 30; ++t) {
    const int n = 2 + static_cast<int>(rng() % 4);
    CircuitDag dag(n);
    MatX want = MatX::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
    for (int g = 0; g < 12; ++g) {
      const int a = static_cast<int>(rng() % n);
      int b = static_cast<int>(rng() % (n - 1));
      if (b >= a) ++b;
      const Mat4 u = haar_random_2q(rng).matrix();
      dag.add(GateNode::unitary({a, b}, u));
      want = oracle::embed(u, {a, b}, n) * want;
    }
    EXPECT_LT((simulate(dag) - want).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Simverify, PermutationMatrixMovesQubits) {
  // Qubit 0 -> 1, 1 -> 2, 2 -> 0: basis state |001> (bit 0) becomes |010>.
  const MatX p = permutation_matrix({1, 2, 0});
  EXPECT_EQ(p(2, 1), Complex(1.0));
  EXPECT_EQ(p(4, 2), Complex(1.0));
  EXPECT_EQ(p(1, 4), Complex(1.0));
}

TEST(Simverify, EquivalenceUpToPhaseAndPermutation) {
  CircuitDag a(2), b(2);
  a.add(GateNode::named("cx", {0, 1}));
  b.add(GateNode::named("cx", {0, 1}));
  b.add(GateNode::named("swap", {0, 1}));
  const MatX ua = simulate(a);
  EXPECT_TRUE(equivalent(ua, simulate(b), {1, 0}, 1e-12));
  EXPECT_FALSE(equivalent(ua, simulate(b), {0, 1}, 1e-9));
  EXPECT_TRUE(equivalent(ua, ua * std::polar(1.0, 1.3), {0, 1}, 1e-12));
  EXPECT_THROW(equivalent(ua, MatX::Identity(8, 8), {0, 1}, 1e-9), Error);
}

TEST(Simverify, RoutingEquivalence) {
  // Logical CX(0,1) placed with v0 on p1 and v1 on p0, then a mirror commit
  // exchanges them.
  CircuitDag logical(2);
  logical.add(GateNode::named("cx", {0, 1}));
  CircuitDag routed(2);
  routed.add(GateNode::unitary({1, 0}, gates::swap() * gates::cnot()));
  EXPECT_TRUE(routing_equivalent(logical, routed, {1, 0}, {0, 1}, 1e-12));
  EXPECT_FALSE(routing_equivalent(logical, routed, {1, 0}, {1, 0}, 1e-9));
}

TEST(Simverify, RefusesLargeCircuits) {
  EXPECT_THROW(simulate(CircuitDag(kMaxSimQubits + 1)), Error);
}
