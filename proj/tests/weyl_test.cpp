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

#include "mirage/weyl.hpp"

#include <gtest/gtest.h>

#include "mirage/errors.hpp"
#include "oracles.hpp"

using namespace mirage;

namespace {

void expect_point(const WeylPoint& got, const WeylPoint& want, double tol) {
  EXPECT_NEAR(got.a, want.a, tol);
  EXPECT_NEAR(got.b, want.b, tol);
  EXPECT_NEAR(got.c, want.c, tol);
}

Mat4 dress(const Mat4& u, Rng& rng) {
  const MatX left = oracle::kron(haar_random_1q(rng), haar_random_1q(rng));
  const MatX right = oracle::kron(haar_random_1q(rng), haar_random_1q(rng));
  return left * u * right;
}

WeylPoint random_chamber_point(Rng& rng) {
  while (true) {
    const WeylPoint p{uniform01(rng) * kHalfPi, uniform01(rng) * kQuarterPi,
                      uniform01(rng) * kQuarterPi};
    if (p.in_chamber(0.0)) return p;
  }
}

}  // namespace

TEST(Weyl, AnchorsExtractExactly) {
  expect_point(canonical_coordinates(Mat4(Mat4::Identity())), anchors::kIdentity, 1e-12);
  expect_point(canonical_coordinates(gates::cnot()), anchors::kCnot, 1e-12);
  expect_point(canonical_coordinates(gates::iswap()), anchors::kIswap, 1e-12);
  expect_point(canonical_coordinates(gates::swap()), anchors::kSwap, 1e-12);
  expect_point(canonical_coordinates(gates::iswap_root(2)), anchors::kSqrtIswap, 1e-12);
}

TEST(Weyl, CoordinatesAgreeWithMakhlinInvariants) {
  Rng rng = make_rng(11);
  for (int i = 0; i < 500; ++i) {
    const Unitary2Q u = haar_random_2q(rng);
    const WeylPoint p = canonical_coordinates(u);
    EXPECT_LT(oracle::makhlin_distance(u.matrix(), oracle::canonical(p.a, p.b, p.c)), 1e-9);
  }
}

TEST(Weyl, CanonicalGateMatchesMatrixExponential) {
  Rng rng = make_rng(12);
  for (int i = 0; i < 200; ++i) {
    const WeylPoint p = random_chamber_point(rng);
    const MatX want = oracle::canonical(p.a, p.b, p.c);
    EXPECT_LT((canonical_gate(p).matrix() - want).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Weyl, OutputsLieInChamber) {
  Rng rng = make_rng(13);
  for (int i = 0; i < 2000; ++i) {
    EXPECT_TRUE(canonical_coordinates(haar_random_2q(rng)).in_chamber(1e-12));
  }
}

TEST(Weyl, LocalDressingInvariance) {
  Rng rng = make_rng(14);
  for (int i = 0; i < 2000; ++i) {
    const Unitary2Q u = haar_random_2q(rng);
    const WeylPoint p = canonical_coordinates(u);
    const WeylPoint q = canonical_coordinates(Mat4(dress(u.matrix(), rng)));
    EXPECT_LE(coordinate_distance(p, q), 1e-9);
  }
}

TEST(Weyl, RoundTripThroughCanonicalGate) {
  Rng rng = make_rng(15);
  for (int i = 0; i < 2000; ++i) {
    const WeylPoint p = random_chamber_point(rng);
    EXPECT_LE(coordinate_distance(canonical_coordinates(canonical_gate(p)), p), 1e-9);
  }
}

TEST(Weyl, MirrorAnchors) {
  expect_point(mirror_coordinates(anchors::kCnot), anchors::kIswap, 1e-12);
  expect_point(mirror_coordinates(anchors::kIdentity), anchors::kSwap, 1e-12);
  expect_point(mirror_coordinates(anchors::kSwap), anchors::kIdentity, 1e-12);
  EXPECT_TRUE(local_equivalent(mirror_unitary(Unitary2Q::trusted(gates::cnot())),
                               Unitary2Q::trusted(gates::iswap())));
  EXPECT_EQ(mirror_unitary(Unitary2Q::trusted(gates::swap())).matrix(), Mat4(Mat4::Identity()));
}

TEST(Weyl, MirrorUnitaryIsSwapTimesU) {
  Rng rng = make_rng(16);
  const Unitary2Q u = haar_random_2q(rng);
  EXPECT_EQ(mirror_unitary(u).matrix(), Mat4(gates::swap() * u.matrix()));
  EXPECT_EQ(mirror_unitary(mirror_unitary(u)).matrix(), u.matrix());
}

TEST(Weyl, MirrorConsistency) {
  Rng rng = make_rng(17);
  for (int i = 0; i < 2000; ++i) {
    const Unitary2Q u = haar_random_2q(rng);
    const WeylPoint direct = canonical_coordinates(mirror_unitary(u));
    const WeylPoint mapped = mirror_coordinates(canonical_coordinates(u));
    EXPECT_LE(coordinate_distance(direct, mapped), 1e-9);
  }
}

TEST(Weyl, MirrorInvolution) {
  Rng rng = make_rng(18);
  for (int i = 0; i < 2000; ++i) {
    const WeylPoint p = random_chamber_point(rng);
    EXPECT_LE(coordinate_distance(mirror_coordinates(mirror_coordinates(p)), p), 1e-9);
  }
}

TEST(Weyl, LocalEquivalence) {
  Rng rng = make_rng(19);
  const Unitary2Q cnot = Unitary2Q::trusted(gates::cnot());
  EXPECT_TRUE(local_equivalent(cnot, Unitary2Q::trusted(dress(gates::cnot(), rng))));
  EXPECT_FALSE(local_equivalent(cnot, Unitary2Q::trusted(gates::iswap())));
  EXPECT_TRUE(local_equivalent(canonical_gate(anchors::kSwap), Unitary2Q::trusted(gates::swap())));
  EXPECT_TRUE(local_equivalent(canonical_gate(anchors::kCnot), cnot));
}

TEST(Weyl, GateFidelity) {
  Rng rng = make_rng(20);
  const Unitary2Q u = haar_random_2q(rng);
  const Unitary2Q v = haar_random_2q(rng);
  const Mat4 phased = u.matrix() * std::polar(1.0, 0.7);
  EXPECT_NEAR(gate_fidelity(u.matrix(), phased), 1.0, 1e-12);
  // Tr(SWAP) = 2, so (4 + 4) / 20.
  EXPECT_NEAR(gate_fidelity(Mat4(Mat4::Identity()), gates::swap()), 0.4, 1e-12);
  EXPECT_NEAR(gate_fidelity(u, v), gate_fidelity(v, u), 1e-14);
}

TEST(Weyl, HaarSecondMoment) {
  Rng rng = make_rng(21);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += std::norm(haar_random_2q(rng).matrix()(0, 0));
  EXPECT_NEAR(sum / n, 0.25, 0.01);
}

TEST(Weyl, HaarDeterministicPerSeed) {
  Rng a = make_rng(5, 1, 2);
  Rng b = make_rng(5, 1, 2);
  EXPECT_EQ(haar_random_2q(a).matrix(), haar_random_2q(b).matrix());
  EXPECT_TRUE(is_unitary(haar_random_2q(a).matrix(), 1e-10));
}

TEST(Weyl, Errors) {
  Mat4 bad = Mat4::Identity();
  bad(0, 0) = 2.0;
  EXPECT_THROW(canonical_coordinates(bad), Error);
  try {
    Unitary2Q::from_matrix(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonUnitaryInput);
  }
  try {
    canonical_gate({1.0, 1.0, 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfChamber);
  }
  EXPECT_THROW(mirror_coordinates({-0.1, 0.0, 0.0}), Error);
}
