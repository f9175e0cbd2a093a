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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <numbers>

namespace mirage {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using MatX = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = kPi / 2.0;
inline constexpr double kQuarterPi = kPi / 4.0;

// Tolerances shared across modules.
inline constexpr double kUnitarityTol = 1e-10;
inline constexpr double kCoordTol = 1e-9;
inline constexpr double kMembershipTol = 1e-6;

/// Two-qubit operator from two single-qubit operators. Qubit 0 of the pair is
/// the least significant bit of the basis index, so `first` acts on bit 0.
inline Mat4 local_pair(const Mat2& first, const Mat2& second) {
  Mat4 out;
  for (int r1 = 0; r1 < 2; ++r1)
    for (int c1 = 0; c1 < 2; ++c1)
      for (int r0 = 0; r0 < 2; ++r0)
        for (int c0 = 0; c0 < 2; ++c0)
          out(2 * r1 + r0, 2 * c1 + c0) = second(r1, c1) * first(r0, c0);
  return out;
}

}  // namespace mirage
