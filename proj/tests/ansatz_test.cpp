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

#include "mirage/ansatz.hpp"

#include <gtest/gtest.h>

#include "mirage/basis.hpp"
#include "mirage/errors.hpp"
#include "mirage/optimizer.hpp"
#include "mirage/weyl.hpp"
#include "oracles.hpp"

using namespace mirage;

namespace {

// u3(theta, phi, lambda) = e^{i(phi+lambda)/2} Rz(phi) Ry(theta) Rz(lambda).
Mat2 u3_reference(double theta, double phi, double lambda) {
  const Complex i(0, 1);
  const Mat2 rz_phi = (-i * phi / 2.0 * oracle::pauli_z()).exp();
  const Mat2 ry = (-i * theta / 2.0 * oracle::pauli_y()).exp();
  const Mat2 rz_lambda = (-i * lambda / 2.0 * oracle::pauli_z()).exp();
  return std::exp(i * (phi + lambda) / 2.0) * rz_phi * ry * rz_lambda;
}

}  // namespace

TEST(Ansatz, U3MatchesEulerProduct) {
  Rng rng = make_rng(1);
  for (int i = 0; i < 100; ++i) {
    const double t = uniform01(rng) * kPi, p = uniform01(rng) * 6.0, l = uniform01(rng) * 6.0;
    EXPECT_LT((u3(t, p, l) - u3_reference(t, p, l)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Ansatz, U3AnglesRoundTrip) {
  Rng rng = make_rng(2);
  for (int i = 0; i < 500; ++i) {
    const Mat2 g = haar_random_1q(rng);
    const auto a = u3_angles(g);
    EXPECT_LT(oracle::phase_distance(u3(a[0], a[1], a[2]), g), 1e-10);
  }
  const auto id = u3_angles(Mat2::Identity());
  EXPECT_LT(oracle::phase_distance(u3(id[0], id[1], id[2]), Mat2::Identity()), 1e-12);
}

TEST(Ansatz, SplitLocalRecoversFactors) {
  Rng rng = make_rng(3);
  for (int i = 0; i < 200; ++i) {
    const Mat2 a = haar_random_1q(rng), b = haar_random_1q(rng);
    const Mat4 m = oracle::kron(b, a);
    const auto [first, second] = split_local(m);
    EXPECT_LT(oracle::phase_distance(oracle::kron(second, first), m), 1e-10);
    EXPECT_LT(oracle::phase_distance(first, a), 1e-10);
  }
}

TEST(Ansatz, WeylGroupLocalsPreserveCanonicalForm) {
  const auto& locals = weyl_group_locals();
  ASSERT_EQ(locals.size(), 96u);
  const MatX xx = oracle::kron(oracle::pauli_x(), oracle::pauli_x());
  const MatX yy = oracle::kron(oracle::pauli_y(), oracle::pauli_y());
  const MatX zz = oracle::kron(oracle::pauli_z(), oracle::pauli_z());
  const Mat4 c = oracle::canonical(0.3, 0.2, 0.1);
  for (const Mat4& k : locals) {
    const MatX conj = k * c * k.adjoint();
    for (const MatX* p : {&xx, &yy, &zz})
      EXPECT_LT((conj * *p - *p * conj).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Ansatz, EvaluateIsInterleavedProduct) {
  const BasisGateSpec basis = BasisGateSpec::sqiswap();
  const Ansatz ansatz(basis, 2);
  Rng rng = make_rng(4);
  std::vector<double> x(static_cast<std::size_t>(ansatz.num_params()));
  for (double& v : x) v = uniform01(rng) * 6.0;
  auto layer = [&](int j) {
    const double* p = x.data() + 6 * j;
    return MatX(oracle::kron(u3_reference(p[3], p[4], p[5]), u3_reference(p[0], p[1], p[2])));
  };
  const Mat4 b = gates::iswap_root(2);
  const MatX want = layer(2) * b * layer(1) * b * layer(0);
  EXPECT_LT(oracle::phase_distance(ansatz.evaluate(x), want), 1e-12);
  EXPECT_EQ(ansatz.num_interior_params(), 6);
}

TEST(Ansatz, BasisParsing) {
  EXPECT_EQ(BasisGateSpec::parse("sqiswap").n, 2);
  EXPECT_EQ(BasisGateSpec::parse("iswap").n, 1);
  EXPECT_EQ(BasisGateSpec::parse("niswap:4").n, 4);
  EXPECT_DOUBLE_EQ(BasisGateSpec::parse("niswap:4").unit_cost(), 0.25);
  EXPECT_THROW(BasisGateSpec::parse("cz"), Error);
  EXPECT_THROW(BasisGateSpec::parse("niswap:0"), Error);
  EXPECT_LE(coordinate_distance(canonical_coordinates(BasisGateSpec::niswap(3).matrix()),
                                BasisGateSpec::niswap(3).point()),
            1e-12);
}

TEST(Optimizer, NelderMeadRosenbrock) {
  const Objective f = [](std::span<const double> x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  NelderMeadOptions o;
  o.max_evals = 20000;
  o.ftol = 1e-16;
  const OptimizeResult r = nelder_mead(f, {-1.2, 1.0}, o);
  EXPECT_NEAR(r.x[0], 1.0, 1e-4);
  EXPECT_NEAR(r.x[1], 1.0, 1e-4);
  EXPECT_LE(r.evals, o.max_evals + 3);
}

TEST(Optimizer, StopsAtTarget) {
  const Objective f = [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
  };
  NelderMeadOptions o;
  o.target = 0.5;
  const OptimizeResult r = nelder_mead(f, {3.0, 3.0, 3.0}, o);
  EXPECT_LE(r.value, 0.5);
}
